#include "ffoil/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ffoil {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool TypeDef::is_theory_constant(ConstId c) const {
  return std::find(theory_constants.begin(), theory_constants.end(), c) != theory_constants.end();
}

bool TypeDef::add_member(ConstId c) {
  if (rank_.count(c) != 0) return false;
  rank_.emplace(c, members.size());
  members.push_back(c);
  return true;
}

std::optional<TypeId> Dataset::find_type(std::string_view name) const {
  for (TypeId i = 0; i < types.size(); ++i) {
    if (types[i].name == name) return i;
  }
  return std::nullopt;
}

const Relation* Dataset::find_background(std::string_view name) const {
  for (const auto& r : backgrounds) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const Relation* Dataset::find_relation(std::string_view name) const {
  if (target.name == name) return &target;
  return find_background(name);
}

namespace {

struct Item {
  std::string text;
  std::size_t column;  // 1-based
  bool quoted = false;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  [[noreturn]] void fail(std::size_t col, const std::string& msg) const { throw ParseError(line_no_, col, msg); }

  // Strips a trailing % comment that lies outside quotes.
  static std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '\'') quoted = !quoted;
      if (s[i] == '%' && !quoted) return s.substr(0, i);
    }
    return s;
  }

  // Splits `s` (starting at column `base`) on top-level commas.
  std::vector<Item> split_items(std::string_view s, std::size_t base) const {
    std::vector<Item> items;
    std::size_t start = 0;
    int depth = 0;
    bool quoted = false;
    auto flush = [&](std::size_t end) {
      std::string_view raw = s.substr(start, end - start);
      std::size_t lead = 0;
      while (lead < raw.size() && (raw[lead] == ' ' || raw[lead] == '\t')) ++lead;
      std::string_view t = trim(raw);
      const std::size_t col = base + start + lead;
      if (t.empty()) fail(col, "empty constant");
      Item item{std::string(t), col};
      if (t.front() == '\'' || (t.size() > 1 && t[0] == '*' && t[1] == '\'')) {
        const bool star = t.front() == '*';
        std::string_view body = star ? t.substr(1) : t;
        if (body.size() < 2 || body.back() != '\'') fail(col, "unterminated quoted constant");
        std::string unq;
        for (std::size_t i = 1; i + 1 < body.size(); ++i) {
          if (body[i] == '\'' && i + 2 < body.size() && body[i + 1] == '\'') {
            unq.push_back('\'');
            ++i;
          } else {
            unq.push_back(body[i]);
          }
        }
        item.text = (star ? "*" : "") + unq;
        item.quoted = true;
      }
      items.push_back(std::move(item));
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char c = s[i];
      if (c == '\'') {
        if (quoted && i + 1 < s.size() && s[i + 1] == '\'') {
          ++i;
          continue;
        }
        quoted = !quoted;
      } else if (!quoted && c == '[') {
        ++depth;
      } else if (!quoted && c == ']') {
        if (--depth < 0) fail(base + i, "unbalanced ']'");
      } else if (!quoted && depth == 0 && c == ',') {
        flush(i);
        start = i + 1;
      }
    }
    if (quoted) fail(base + start, "unterminated quoted constant");
    if (depth != 0) fail(base + start, "unbalanced '['");
    flush(s.size());
    return items;
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
};

enum class Section { None, TargetPos, TargetNeg, Background, Test };

// `name(t1, ..., tn)` -> name and type names with columns.
struct Header {
  std::string name;
  std::vector<Item> args;
};

Header parse_header(const LineParser& lp, std::string_view rest, std::size_t base) {
  std::size_t i = 0;
  while (i < rest.size() && rest[i] == ' ') ++i;
  const std::size_t name_start = i;
  while (i < rest.size() && is_ident_char(rest[i])) ++i;
  if (i == name_start) lp.fail(base + i, "expected relation name");
  Header h{std::string(rest.substr(name_start, i - name_start)), {}};
  while (i < rest.size() && rest[i] == ' ') ++i;
  if (i >= rest.size() || rest[i] != '(') lp.fail(base + i, "expected '(' after relation name");
  const std::size_t close = rest.rfind(')');
  if (close == std::string_view::npos || close < i) lp.fail(base + rest.size(), "expected ')'");
  if (!trim(rest.substr(close + 1)).empty()) lp.fail(base + close + 1, "unexpected text after ')'");
  h.args = lp.split_items(rest.substr(i + 1, close - i - 1), base + i + 1);
  return h;
}

class DatasetParser {
 public:
  explicit DatasetParser(std::string_view text) : text_(text) {}

  Dataset run() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t nl = text_.find('\n', pos);
      if (nl == std::string_view::npos) nl = text_.size();
      ++line_no;
      handle_line(text_.substr(pos, nl - pos), line_no);
      pos = nl + 1;
    }
    if (section_ != Section::None) throw ParseError(line_no, 1, "missing '.' terminating the final section");
    if (!have_target_) throw ParseError(line_no, 1, "no target relation declared");
    if (ds_.target.positives.empty()) throw ParseError(target_line_, 1, "target relation has no positive tuples");
    return std::move(ds_);
  }

 private:
  void handle_line(std::string_view raw, std::size_t line_no) {
    LineParser lp(raw, line_no);
    std::string_view line = LineParser::strip_comment(raw);
    std::string_view t = trim(line);
    if (t.empty()) return;
    const std::size_t base = static_cast<std::size_t>(t.data() - raw.data()) + 1;

    if (section_ != Section::None) {
      if (t == ".") {
        section_ = Section::None;
        current_ = nullptr;
        return;
      }
      if (t == ";") {
        if (section_ != Section::TargetPos) lp.fail(base, "';' is only allowed inside the target section");
        section_ = Section::TargetNeg;
        return;
      }
      add_tuple(lp, t, base);
      return;
    }

    if (pending_ordered_ && t.rfind("values:", 0) == 0) {
      auto items = lp.split_items(t.substr(7), base + 7);
      TypeDef& ty = ds_.types.back();
      for (const auto& it : items) add_type_member(lp, ty, it);
      pending_ordered_ = false;
      return;
    }
    pending_ordered_ = false;

    const std::size_t sp = t.find_first_of(" \t");
    const std::string_view keyword = t.substr(0, sp);
    const std::string_view rest = sp == std::string_view::npos ? std::string_view{} : t.substr(sp);
    const std::size_t rest_base = base + (sp == std::string_view::npos ? t.size() : sp);

    if (keyword == "type") {
      parse_type(lp, rest, rest_base);
    } else if (keyword == "target") {
      if (have_target_) lp.fail(base, "duplicate target declaration");
      have_target_ = true;
      target_line_ = line_no;
      declare_relation(lp, ds_.target, rest, rest_base);
      current_ = &ds_.target;
      section_ = Section::TargetPos;
    } else if (keyword == "background") {
      Relation rel;
      declare_relation(lp, rel, rest, rest_base);
      if (ds_.find_background(rel.name) != nullptr) lp.fail(rest_base, "duplicate background relation '" + rel.name + "'");
      if (have_target_ && rel.name == ds_.target.name) lp.fail(rest_base, "background relation shares the target's name");
      ds_.backgrounds.push_back(std::move(rel));
      current_ = &ds_.backgrounds.back();
      section_ = Section::Background;
    } else if (keyword == "test") {
      const std::string name(trim(rest));
      if (!have_target_ || name != ds_.target.name) lp.fail(rest_base, "test section must name the declared target");
      if (!ds_.test_tuples) ds_.test_tuples.emplace();
      current_ = &ds_.target;
      section_ = Section::Test;
    } else if (keyword == "order") {
      parse_order(lp, rest, rest_base);
    } else {
      lp.fail(base, "unknown directive '" + std::string(keyword) + "'");
    }
  }

  void parse_type(const LineParser& lp, std::string_view rest, std::size_t base) {
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) lp.fail(base, "expected ':' in type declaration");
    const std::string name(trim(rest.substr(0, colon)));
    if (name.empty()) lp.fail(base, "expected type name");
    if (ds_.find_type(name)) lp.fail(base, "duplicate type '" + name + "'");
    TypeDef ty;
    ty.name = name;
    const std::string_view body = trim(rest.substr(colon + 1));
    if (body == "ordered") {
      ty.ordered = true;
      ds_.types.push_back(std::move(ty));
      pending_ordered_ = true;
      return;
    }
    auto items = lp.split_items(rest.substr(colon + 1), base + colon + 1);
    for (const auto& it : items) add_type_member(lp, ty, it);
    ds_.types.push_back(std::move(ty));
  }

  void add_type_member(const LineParser& lp, TypeDef& ty, const Item& item) {
    std::string_view sym = item.text;
    bool theory = false;
    if (!sym.empty() && sym.front() == '*') {
      theory = true;
      sym.remove_prefix(1);
    }
    if (sym.empty()) lp.fail(item.column, "empty constant");
    const ConstId c = ds_.symbols->intern(sym);
    if (ty.ordered && !ds_.symbols->numeric(c)) lp.fail(item.column, "ordered type '" + ty.name + "' needs numeric values");
    ty.add_member(c);
    if (theory && !ty.is_theory_constant(c)) ty.theory_constants.push_back(c);
  }

  void declare_relation(const LineParser& lp, Relation& rel, std::string_view rest, std::size_t base) {
    Header h = parse_header(lp, rest, base);
    rel.name = h.name;
    for (const auto& a : h.args) {
      auto id = ds_.find_type(a.text);
      if (!id) lp.fail(a.column, "unknown type '" + a.text + "'");
      rel.signature.push_back(*id);
    }
  }

  void add_tuple(const LineParser& lp, std::string_view t, std::size_t base) {
    auto items = lp.split_items(t, base);
    const Relation& rel = *current_;
    if (items.size() != rel.arity()) {
      lp.fail(base, "arity mismatch: " + rel.name + " expects " + std::to_string(rel.arity()) + " values, got " +
                        std::to_string(items.size()));
    }
    Tuple tuple;
    tuple.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].text.empty()) lp.fail(items[i].column, "empty constant");
      const ConstId c = ds_.symbols->intern(items[i].text);
      TypeDef& ty = ds_.types[rel.signature[i]];
      if (!ty.contains(c)) {
        if (ty.ordered && ds_.symbols->numeric(c)) {
          ty.add_member(c);
        } else {
          lp.fail(items[i].column, "constant '" + items[i].text + "' is not in type '" + ty.name + "'");
        }
      }
      tuple.push_back(c);
    }
    switch (section_) {
      case Section::TargetPos:
        if (ds_.target.negatives.contains(tuple)) lp.fail(base, "tuple listed as both positive and negative");
        ds_.target.positives.insert(std::move(tuple));
        break;
      case Section::TargetNeg:
        if (ds_.target.positives.contains(tuple)) lp.fail(base, "tuple listed as both positive and negative");
        ds_.target.negatives.insert(std::move(tuple));
        break;
      case Section::Background:
        current_->positives.insert(std::move(tuple));
        break;
      case Section::Test:
        ds_.test_tuples->insert(std::move(tuple));
        break;
      case Section::None:
        break;
    }
  }

  void parse_order(const LineParser& lp, std::string_view rest, std::size_t base) {
    std::istringstream in{std::string(rest)};
    std::string rel, op;
    long smaller = 0, larger = 0;
    if (!(in >> rel >> smaller >> op >> larger) || (op != "<" && op != "=<")) {
      lp.fail(base, "expected 'order <relation> <pos> < <pos>'");
    }
    const Relation* r = ds_.find_background(rel);
    if (r == nullptr) lp.fail(base, "order declared for unknown background relation '" + rel + "'");
    if (smaller < 1 || larger < 1 || static_cast<std::size_t>(smaller) > r->arity() ||
        static_cast<std::size_t>(larger) > r->arity() || smaller == larger) {
      lp.fail(base, "order positions out of range for '" + rel + "'");
    }
    if (r->signature[smaller - 1] != r->signature[larger - 1]) lp.fail(base, "ordered positions must share a type");
    ds_.orders.push_back(
        OrderDecl{rel, static_cast<std::size_t>(smaller - 1), static_cast<std::size_t>(larger - 1), op == "<"});
  }

  std::string_view text_;
  Dataset ds_;
  Section section_ = Section::None;
  Relation* current_ = nullptr;
  bool have_target_ = false;
  bool pending_ordered_ = false;
  std::size_t target_line_ = 0;
};

bool bracket_balanced_without_spaces(const std::string& s) {
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']' && --depth < 0) return false;
    if (c == ',' && depth == 0) return false;
  }
  return depth == 0;
}

void render_tuples(std::ostringstream& out, const Dataset& ds, const TupleSet& tuples) {
  for (const auto& t : tuples) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out << ", ";
      out << quote_constant(ds.symbol(t[i]));
    }
    out << '\n';
  }
}

void render_signature(std::ostringstream& out, const Dataset& ds, const Relation& rel) {
  out << rel.name << '(';
  for (std::size_t i = 0; i < rel.signature.size(); ++i) {
    if (i) out << ", ";
    out << ds.type(rel.signature[i]).name;
  }
  out << ")\n";
}

}  // namespace

std::string quote_constant(const std::string& symbol) {
  bool safe = !symbol.empty() && symbol.front() != '*' && symbol != "." && symbol != ";" &&
              bracket_balanced_without_spaces(symbol);
  for (char c : symbol) {
    if (c == ' ' || c == '\t' || c == '%' || c == '\'' || c == '\n' || c == '\r') safe = false;
  }
  if (safe) return symbol;
  std::string out = "'";
  for (char c : symbol) {
    if (c == '\'') out += "''";
    else out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

Dataset parse_dataset(std::string_view text) { return DatasetParser(text).run(); }

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_dataset(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + std::string(e.what()));
  }
}

std::string render_dataset(const Dataset& ds) {
  std::ostringstream out;
  for (const auto& ty : ds.types) {
    out << "type " << ty.name << ':';
    if (ty.ordered) {
      out << " ordered\n";
      if (!ty.members.empty()) {
        out << "values:";
        for (std::size_t i = 0; i < ty.members.size(); ++i) {
          out << (i ? ", " : " ") << (ty.is_theory_constant(ty.members[i]) ? "*" : "")
              << quote_constant(ds.symbol(ty.members[i]));
        }
        out << '\n';
      }
      continue;
    }
    for (std::size_t i = 0; i < ty.members.size(); ++i) {
      out << (i ? ", " : " ") << (ty.is_theory_constant(ty.members[i]) ? "*" : "")
          << quote_constant(ds.symbol(ty.members[i]));
    }
    out << '\n';
  }
  out << "target ";
  render_signature(out, ds, ds.target);
  render_tuples(out, ds, ds.target.positives);
  if (!ds.target.negatives.empty()) {
    out << ";\n";
    render_tuples(out, ds, ds.target.negatives);
  }
  out << ".\n";
  for (const auto& rel : ds.backgrounds) {
    out << "background ";
    render_signature(out, ds, rel);
    render_tuples(out, ds, rel.positives);
    out << ".\n";
  }
  for (const auto& o : ds.orders) {
    out << "order " << o.relation << ' ' << o.smaller + 1 << (o.strict ? " < " : " =< ") << o.larger + 1 << '\n';
  }
  if (ds.test_tuples) {
    out << "test " << ds.target.name << '\n';
    render_tuples(out, ds, *ds.test_tuples);
    out << ".\n";
  }
  return out.str();
}

std::uint64_t product_size(const Relation& rel, const std::vector<TypeDef>& types) {
  std::uint64_t total = 1;
  for (TypeId t : rel.signature) {
    const std::uint64_t n = types.at(t).members.size();
    if (n != 0 && total > UINT64_MAX / n) return UINT64_MAX;
    total *= n;
  }
  return total;
}

std::vector<Tuple> closed_world_complement(const Relation& rel, const std::vector<TypeDef>& types, std::uint64_t cap) {
  if (!rel.negatives.empty()) throw Error("relation '" + rel.name + "' already has explicit negatives");
  for (TypeId t : rel.signature) {
    if (types.at(t).ordered) {
      throw Error("closed-world complement needs finite types; '" + types[t].name + "' is numeric-ordered");
    }
  }
  const std::uint64_t total = product_size(rel, types);
  if (total > cap) {
    throw Error("closed-world complement of '" + rel.name + "' spans " + std::to_string(total) +
                " tuples, over the cap of " + std::to_string(cap) + "; use FFOIL mode or negative sampling");
  }
  std::vector<Tuple> out;
  out.reserve(total - std::min<std::uint64_t>(total, rel.positives.size()));
  const std::size_t n = rel.arity();
  if (n == 0 || total == 0) return out;
  std::vector<std::size_t> idx(n, 0);
  Tuple t(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) t[i] = types[rel.signature[i]].members[idx[i]];
    if (!rel.positives.contains(t)) out.push_back(t);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < types[rel.signature[pos]].members.size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

FunctionalReport check_functional(const Relation& rel) {
  FunctionalReport report;
  if (rel.arity() == 0) return report;
  std::unordered_map<Tuple, ConstId, TupleHash> outputs;
  TupleSet violating;
  std::unordered_set<ConstId> range;
  for (const auto& t : rel.positives) {
    Tuple prefix(t.begin(), t.end() - 1);
    const ConstId out = t.back();
    range.insert(out);
    auto [it, fresh] = outputs.emplace(prefix, out);
    if (!fresh && it->second != out) violating.insert(std::move(prefix));
  }
  report.range_size = range.size();
  report.violations = violating.tuples();
  report.functional = report.violations.empty();
  return report;
}

std::optional<ConstId> most_common_output(const Relation& rel, const TypeDef& output_type) {
  if (rel.positives.empty()) throw Error("most_common_output on empty relation '" + rel.name + "'");
  std::map<ConstId, std::size_t> counts;
  for (const auto& t : rel.positives) ++counts[t.back()];
  std::optional<ConstId> best;
  std::size_t best_count = 0;
  for (const auto& [c, n] : counts) {
    if (n > best_count || (n == best_count && output_type.rank(c) < output_type.rank(*best))) {
      best = c;
      best_count = n;
    }
  }
  if (best_count <= 1) return std::nullopt;
  return best;
}

}  // namespace ffoil
