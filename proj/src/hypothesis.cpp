#include "ffoil/hypothesis.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace ffoil {

Literal Literal::rel(std::string name, std::vector<Term> args, bool negated) {
  Literal l;
  l.kind = LiteralKind::Relation;
  l.relation = std::move(name);
  l.args = std::move(args);
  l.negated = negated;
  return l;
}

Literal Literal::eq_var(VarId a, VarId b, bool negated) {
  Literal l;
  l.kind = LiteralKind::EqVar;
  l.args = {Term::var(a), Term::var(b)};
  l.negated = negated;
  return l;
}

Literal Literal::eq_const(VarId v, ConstId c, bool negated) {
  Literal l;
  l.kind = LiteralKind::EqConst;
  l.args = {Term::var(v), Term::constant(c)};
  l.negated = negated;
  return l;
}

Literal Literal::cmp_var(VarId a, VarId b, CmpOp op) {
  Literal l;
  l.kind = LiteralKind::CmpVar;
  l.args = {Term::var(a), Term::var(b)};
  l.op = op;
  return l;
}

Literal Literal::cmp_threshold(VarId v, double t, CmpOp op) {
  Literal l;
  l.kind = LiteralKind::CmpThreshold;
  l.args = {Term::var(v)};
  l.threshold = t;
  l.op = op;
  return l;
}

std::vector<VarId> Literal::variables() const {
  std::vector<VarId> out;
  for (const auto& t : args) {
    if (t.is_var() && std::find(out.begin(), out.end(), t.id) == out.end()) out.push_back(t.id);
  }
  return out;
}

bool Literal::mentions(VarId v) const {
  return std::any_of(args.begin(), args.end(), [v](const Term& t) { return t.is_var() && t.id == v; });
}

Clause Clause::most_general(const Relation& target) {
  Clause c;
  c.head = target.name;
  c.arity = target.arity();
  for (TypeId t : target.signature) c.vars.push_back(VarInfo{t, 0});
  return c;
}

std::vector<VarId> Clause::new_variables(const Literal& lit) const {
  std::vector<VarId> out;
  for (VarId v : lit.variables()) {
    if (v >= vars.size()) out.push_back(v);
  }
  return out;
}

void Clause::add_literal(const Literal& lit, const Dataset& ds) {
  int depth = 0;
  for (const auto& t : lit.args) {
    if (t.is_var() && t.id < vars.size()) depth = std::max(depth, vars[t.id].depth);
  }
  const Relation* rel = lit.kind == LiteralKind::Relation ? ds.find_relation(lit.relation) : nullptr;
  for (std::size_t i = 0; i < lit.args.size(); ++i) {
    const Term& t = lit.args[i];
    if (!t.is_var() || t.id < vars.size()) continue;
    if (t.id != vars.size()) throw Error("literal introduces variables out of order");
    const TypeId type = rel != nullptr && i < rel->arity() ? rel->signature[i] : kNoType;
    vars.push_back(VarInfo{type, depth + 1});
  }
  body.push_back(lit);
}

Clause Clause::without_literal(std::size_t i) const {
  Clause out = *this;
  out.body.erase(out.body.begin() + static_cast<std::ptrdiff_t>(i));
  std::vector<bool> used(vars.size(), false);
  for (std::size_t v = 0; v < arity; ++v) used[v] = true;
  for (const auto& lit : out.body) {
    for (const auto& t : lit.args) {
      if (t.is_var()) used[t.id] = true;
    }
  }
  std::vector<VarId> remap(vars.size(), 0);
  out.vars.clear();
  for (VarId v = 0; v < vars.size(); ++v) {
    if (!used[v]) continue;
    remap[v] = static_cast<VarId>(out.vars.size());
    out.vars.push_back(vars[v]);
  }
  for (auto& lit : out.body) {
    for (auto& t : lit.args) {
      if (t.is_var()) t.id = remap[t.id];
    }
  }
  return out;
}

std::size_t Definition::literal_count() const {
  std::size_t n = 0;
  for (const auto& c : clauses) n += c.body.size();
  return n;
}

std::vector<const Clause*> Definition::all_clauses() const {
  std::vector<const Clause*> out;
  for (const auto& c : clauses) out.push_back(&c);
  if (default_clause) out.push_back(&*default_clause);
  return out;
}

std::string variable_name(VarId v) {
  std::string name(1, static_cast<char>('A' + v % 26));
  if (v >= 26) name += std::to_string(v / 26);
  return name;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string prolog_constant(const std::string& s) {
  bool safe = !s.empty() && !(std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_');
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    else if (c == ']') --depth;
    else if (c == ',' && depth > 0) continue;
    else if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) safe = false;
    if (depth < 0) safe = false;
  }
  if (depth != 0) safe = false;
  if (safe) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "\\'";
    else out.push_back(c);
  }
  return out + "'";
}

std::string format_threshold(double t) {
  std::ostringstream out;
  out.precision(10);
  out << t;
  return out.str();
}

// Cosmetic folding of head-variable equalities into the head.
struct HeadFold {
  std::vector<VarId> rep;                  // representative per variable
  std::vector<std::optional<ConstId>> value;  // constant bound to a head class
  std::vector<bool> folded;                // body literal consumed by the head
};

HeadFold fold_head(const Clause& clause) {
  HeadFold f;
  f.rep.resize(clause.vars.size());
  for (VarId v = 0; v < f.rep.size(); ++v) f.rep[v] = v;
  f.value.assign(clause.vars.size(), std::nullopt);
  f.folded.assign(clause.body.size(), false);
  auto find = [&](VarId v) {
    while (f.rep[v] != v) v = f.rep[v];
    return v;
  };
  for (std::size_t i = 0; i < clause.body.size(); ++i) {
    const Literal& lit = clause.body[i];
    if (lit.negated) continue;
    if (lit.kind == LiteralKind::EqVar) {
      const VarId a = lit.args[0].id, b = lit.args[1].id;
      if (a >= clause.arity || b >= clause.arity) continue;
      VarId ra = find(a), rb = find(b);
      if (ra == rb) {
        f.folded[i] = true;
        continue;
      }
      if (f.value[ra] && f.value[rb] && *f.value[ra] != *f.value[rb]) continue;
      if (rb < ra) std::swap(ra, rb);
      f.rep[rb] = ra;
      if (!f.value[ra]) f.value[ra] = f.value[rb];
      f.folded[i] = true;
    } else if (lit.kind == LiteralKind::EqConst) {
      const VarId v = lit.args[0].id;
      if (v >= clause.arity) continue;
      const VarId r = find(v);
      if (f.value[r] && *f.value[r] != lit.args[1].id) continue;
      f.value[r] = lit.args[1].id;
      f.folded[i] = true;
    }
  }
  for (VarId v = 0; v < f.rep.size(); ++v) f.rep[v] = find(v);
  return f;
}

std::string render_term(const Term& t, const SymbolTable& symbols, const HeadFold* fold) {
  switch (t.kind) {
    case Term::Kind::Anon:
      return "_";
    case Term::Kind::Const:
      return prolog_constant(symbols.name(t.id));
    case Term::Kind::Var:
      break;
  }
  if (fold != nullptr && t.id < fold->rep.size()) {
    const VarId r = fold->rep[t.id];
    if (fold->value[r]) return prolog_constant(symbols.name(*fold->value[r]));
    return variable_name(r);
  }
  return variable_name(t.id);
}

std::string render_literal_folded(const Literal& lit, const SymbolTable& symbols, const HeadFold* fold) {
  auto term = [&](std::size_t i) { return render_term(lit.args[i], symbols, fold); };
  switch (lit.kind) {
    case LiteralKind::Relation: {
      std::string s = lit.relation;
      if (!lit.args.empty()) {
        s += '(';
        for (std::size_t i = 0; i < lit.args.size(); ++i) {
          if (i) s += ',';
          s += term(i);
        }
        s += ')';
      }
      return lit.negated ? "not(" + s + ")" : s;
    }
    case LiteralKind::EqVar:
    case LiteralKind::EqConst:
      return term(0) + (lit.negated ? "\\=" : "=") + term(1);
    case LiteralKind::CmpVar:
      return term(0) + (lit.op == CmpOp::LessEq ? "=<" : ">") + term(1);
    case LiteralKind::CmpThreshold:
      return term(0) + (lit.op == CmpOp::LessEq ? "=<" : ">") + format_threshold(lit.threshold);
  }
  return {};
}

}  // namespace

std::vector<bool> head_folded_literals(const Clause& clause) { return fold_head(clause).folded; }

std::string render_literal(const Literal& lit, const SymbolTable& symbols) {
  return render_literal_folded(lit, symbols, nullptr);
}

std::string render_clause(const Clause& clause, const SymbolTable& symbols, bool is_default) {
  const HeadFold fold = fold_head(clause);
  std::string s = clause.head + "(";
  for (VarId v = 0; v < clause.arity; ++v) {
    if (v) s += ',';
    s += render_term(Term::var(v), symbols, &fold);
  }
  s += ')';
  std::vector<std::string> goals;
  for (std::size_t i = 0; i < clause.body.size(); ++i) {
    if (!fold.folded[i]) goals.push_back(render_literal_folded(clause.body[i], symbols, &fold));
  }
  if (clause.cut && !is_default) goals.emplace_back("!");
  if (!goals.empty()) {
    s += " :- ";
    for (std::size_t i = 0; i < goals.size(); ++i) {
      if (i) s += ", ";
      s += goals[i];
    }
  }
  return s + ".";
}

std::string render_prolog(const Definition& def, const SymbolTable& symbols) {
  std::string out;
  for (const auto& c : def.clauses) out += render_clause(c, symbols) + "\n";
  if (def.default_clause) out += render_clause(*def.default_clause, symbols, true) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Name, Var, Const, LParen, RParen, Comma, Dot, Neck, Cut, Eq, Neq, Le, Gt, Lt, Ge, Not, Semi, Bar, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

class PrologLexer {
 public:
  explicit PrologLexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t l = line_, c = col_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      const char ch = text_[pos_];
      auto single = [&](Tok k) {
        out.push_back({k, std::string(1, ch), l, c});
        advance(1);
      };
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t end = pos_;
        while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
        std::string word(text_.substr(pos_, end - pos_));
        advance(end - pos_);
        const bool var = std::isupper(static_cast<unsigned char>(word[0])) || word[0] == '_';
        // Capitalized predicate names are accepted when followed by '('.
        const bool call = pos_ < text_.size() && text_[pos_] == '(';
        out.push_back({var && !call ? Tok::Var : Tok::Name, word, l, c});
      } else if (std::isdigit(static_cast<unsigned char>(ch)) ||
                 (ch == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        std::size_t end = pos_ + 1;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        if (end + 1 < text_.size() && text_[end] == '.' && std::isdigit(static_cast<unsigned char>(text_[end + 1]))) {
          ++end;
          while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        }
        out.push_back({Tok::Const, std::string(text_.substr(pos_, end - pos_)), l, c});
        advance(end - pos_);
      } else if (ch == '\'') {
        std::string s;
        std::size_t i = pos_ + 1;
        while (i < text_.size() && text_[i] != '\'') {
          if (text_[i] == '\\' && i + 1 < text_.size()) ++i;
          s.push_back(text_[i++]);
        }
        if (i >= text_.size()) throw ParseError(l, c, "unterminated quoted atom");
        advance(i + 1 - pos_);
        out.push_back({Tok::Const, s, l, c});
      } else if (ch == '[') {
        int depth = 0;
        std::size_t i = pos_;
        std::string s;
        for (; i < text_.size(); ++i) {
          const char x = text_[i];
          if (x == '[') ++depth;
          if (x == ']') --depth;
          if (x == '|') throw ParseError(l, c, "list terms with '|' are outside the clause language");
          if (std::isupper(static_cast<unsigned char>(x)) || x == '_') {
            throw ParseError(l, c, "lists containing variables are outside the clause language");
          }
          if (x != ' ' && x != '\t' && x != '\n') s.push_back(x);
          if (depth == 0) break;
        }
        if (depth != 0) throw ParseError(l, c, "unbalanced '['");
        advance(i + 1 - pos_);
        out.push_back({Tok::Const, s, l, c});
      } else if (starts_with(":-")) {
        out.push_back({Tok::Neck, ":-", l, c});
        advance(2);
      } else if (starts_with("\\+")) {
        out.push_back({Tok::Not, "\\+", l, c});
        advance(2);
      } else if (starts_with("\\=")) {
        out.push_back({Tok::Neq, "\\=", l, c});
        advance(2);
      } else if (starts_with("=<")) {
        out.push_back({Tok::Le, "=<", l, c});
        advance(2);
      } else if (starts_with(">=")) {
        out.push_back({Tok::Ge, ">=", l, c});
        advance(2);
      } else if (ch == '=') {
        single(Tok::Eq);
      } else if (ch == '>') {
        single(Tok::Gt);
      } else if (ch == '<') {
        single(Tok::Lt);
      } else if (ch == '(') {
        single(Tok::LParen);
      } else if (ch == ')') {
        single(Tok::RParen);
      } else if (ch == ',') {
        single(Tok::Comma);
      } else if (ch == '.') {
        single(Tok::Dot);
      } else if (ch == '!') {
        single(Tok::Cut);
      } else if (ch == ';') {
        throw ParseError(l, c, "disjunctive goals unsupported");
      } else if (ch == '|') {
        single(Tok::Bar);
      } else {
        throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
      }
    }
  }

 private:
  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class PrologParser {
 public:
  PrologParser(std::vector<Token> toks, SymbolTable& symbols) : toks_(std::move(toks)), symbols_(symbols) {}

  Definition run() {
    Definition def;
    std::vector<Clause> clauses;
    while (peek().kind != Tok::End) clauses.push_back(parse_clause());
    if (clauses.empty()) return def;
    def.target = clauses.front().head;
    def.arity = clauses.front().arity;
    for (const auto& c : clauses) {
      if (c.head != def.target || c.arity != def.arity) {
        throw Error("clause for '" + c.head + "/" + std::to_string(c.arity) + "' in a definition of '" + def.target +
                    "/" + std::to_string(def.arity) + "'");
      }
    }
    def.ordered = std::any_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.cut; });
    if (def.ordered) {
      if (!clauses.back().cut) {
        def.default_clause = clauses.back();
        clauses.pop_back();
      }
      for (const auto& c : clauses) {
        if (!c.cut) throw Error("ordered definitions must end every non-default clause with a cut");
      }
    }
    def.clauses = std::move(clauses);
    return def;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.column, msg); }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    return next();
  }

  Term term(Clause& clause, bool negated_context) {
    const Token& t = next();
    if (t.kind == Tok::Var) {
      if (t.text == "_") {
        if (negated_context) return Term::anon();
        clause.vars.push_back(VarInfo{});
        return Term::var(static_cast<VarId>(clause.vars.size() - 1));
      }
      auto it = names_.find(t.text);
      if (it != names_.end()) return Term::var(it->second);
      clause.vars.push_back(VarInfo{});
      const auto v = static_cast<VarId>(clause.vars.size() - 1);
      names_.emplace(t.text, v);
      return Term::var(v);
    }
    if (t.kind == Tok::Const) return Term::constant(symbols_.intern(t.text));
    if (t.kind == Tok::Name) {
      if (peek().kind == Tok::LParen) fail(t, "function symbols are outside the clause language");
      return Term::constant(symbols_.intern(t.text));
    }
    fail(t, "expected a variable or constant");
  }

  std::vector<Term> args(Clause& clause, bool negated_context) {
    std::vector<Term> out;
    if (peek().kind != Tok::LParen) return out;
    next();
    out.push_back(term(clause, negated_context));
    while (peek().kind == Tok::Comma) {
      next();
      out.push_back(term(clause, negated_context));
    }
    expect(Tok::RParen, "')'");
    return out;
  }

  Literal goal(Clause& clause) {
    const Token& t = peek();
    if (t.kind == Tok::Not || (t.kind == Tok::Name && t.text == "not")) {
      next();
      const bool paren = peek().kind == Tok::LParen;
      if (paren) next();
      const Token& name = expect(Tok::Name, "relation name inside not(...)");
      Literal inner = Literal::rel(name.text, args(clause, true), true);
      if (paren) expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Name && peek_is_call_or_atom()) {
      if (t.text == "fail" || t.text == "false") fail(t, "'fail' is outside the clause language");
      if (t.text == "true") fail(t, "'true' is outside the clause language");
      next();
      return Literal::rel(t.text, args(clause, false));
    }
    // Binary goal.
    Term lhs = term(clause, false);
    const Token& op = next();
    Term rhs = term(clause, false);
    auto as_var = [&](const Term& x) {
      if (!x.is_var()) fail(op, "comparison needs a variable operand");
      return x.id;
    };
    auto as_number = [&](const Term& x) -> double {
      auto v = x.kind == Term::Kind::Const ? symbols_.numeric(x.id) : std::nullopt;
      if (!v) fail(op, "threshold must be numeric");
      return *v;
    };
    switch (op.kind) {
      case Tok::Eq:
      case Tok::Neq: {
        const bool neg = op.kind == Tok::Neq;
        if (lhs.is_var() && rhs.is_var()) return Literal::eq_var(lhs.id, rhs.id, neg);
        if (lhs.is_var() && rhs.kind == Term::Kind::Const) return Literal::eq_const(lhs.id, rhs.id, neg);
        if (rhs.is_var() && lhs.kind == Term::Kind::Const) return Literal::eq_const(rhs.id, lhs.id, neg);
        fail(op, "equality needs a variable operand");
      }
      case Tok::Le:
      case Tok::Gt:
      case Tok::Lt:
      case Tok::Ge: {
        if (lhs.is_var() && rhs.is_var()) {
          if (op.kind == Tok::Le) return Literal::cmp_var(lhs.id, rhs.id, CmpOp::LessEq);
          if (op.kind == Tok::Gt) return Literal::cmp_var(lhs.id, rhs.id, CmpOp::Greater);
          if (op.kind == Tok::Lt) return Literal::cmp_var(rhs.id, lhs.id, CmpOp::Greater);
          return Literal::cmp_var(rhs.id, lhs.id, CmpOp::LessEq);
        }
        if (op.kind == Tok::Le) return Literal::cmp_threshold(as_var(lhs), as_number(rhs), CmpOp::LessEq);
        if (op.kind == Tok::Gt) return Literal::cmp_threshold(as_var(lhs), as_number(rhs), CmpOp::Greater);
        fail(op, "only =< and > are supported against thresholds");
      }
      default:
        fail(op, "expected a goal");
    }
  }

  bool peek_is_call_or_atom() const {
    const Tok after = toks_[pos_ + 1].kind;
    return after == Tok::LParen || after == Tok::Comma || after == Tok::Dot;
  }

  Clause parse_clause() {
    names_.clear();
    Clause clause;
    const Token& head = expect(Tok::Name, "clause head");
    clause.head = head.text;
    std::vector<Token> head_args;
    std::vector<Literal> prefix;
    if (peek().kind == Tok::LParen) {
      next();
      while (true) {
        const Token& a = next();
        if (a.kind != Tok::Var && a.kind != Tok::Const && a.kind != Tok::Name) fail(a, "expected head argument");
        if (a.kind == Tok::Name && peek().kind == Tok::LParen) fail(a, "function symbols are outside the clause language");
        head_args.push_back(a);
        if (peek().kind == Tok::Comma) {
          next();
          continue;
        }
        expect(Tok::RParen, "')'");
        break;
      }
    }
    clause.arity = head_args.size();
    clause.vars.assign(clause.arity, VarInfo{});
    for (std::size_t i = 0; i < head_args.size(); ++i) {
      const Token& a = head_args[i];
      const auto v = static_cast<VarId>(i);
      if (a.kind == Tok::Var && a.text != "_") {
        auto it = names_.find(a.text);
        if (it == names_.end()) {
          names_.emplace(a.text, v);
        } else {
          prefix.push_back(Literal::eq_var(it->second, v));
        }
      } else if (a.kind != Tok::Var) {
        prefix.push_back(Literal::eq_const(v, symbols_.intern(a.text)));
      }
    }
    clause.body = prefix;
    if (peek().kind == Tok::Neck) {
      next();
      while (true) {
        if (peek().kind == Tok::Cut) {
          next();
          clause.cut = true;
          if (peek().kind != Tok::Dot) fail(peek(), "cut is only supported at the end of a clause");
          break;
        }
        clause.body.push_back(goal(clause));
        if (peek().kind == Tok::Comma) {
          next();
          continue;
        }
        break;
      }
    }
    expect(Tok::Dot, "'.' ending the clause");
    return clause;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SymbolTable& symbols_;
  std::map<std::string, VarId> names_;
};

}  // namespace

Definition parse_prolog_definition(std::string_view text, SymbolTable& symbols) {
  return PrologParser(PrologLexer(text).run(), symbols).run();
}

// ---------------------------------------------------------------------------
// Recursion guard

RecursionProfile recursion_profile(const Literal& lit, const Clause& clause, const Dataset& ds, bool functional_mode) {
  const std::size_t n = clause.var_count();
  const std::size_t checked = functional_mode ? clause.arity - 1 : clause.arity;
  RecursionProfile profile(checked, ArgOrder::Unknown);
  if (lit.args.size() != clause.arity) return profile;

  // Edges "a precedes b" (strict or not) from order-declared body literals.
  struct Edge {
    VarId to;
    bool strict;
  };
  std::vector<std::vector<Edge>> edges(n);
  for (const auto& b : clause.body) {
    if (b.negated) continue;
    if (b.kind == LiteralKind::EqVar) {
      const VarId x = b.args[0].id, y = b.args[1].id;
      edges[x].push_back({y, false});
      edges[y].push_back({x, false});
      continue;
    }
    if (b.kind != LiteralKind::Relation) continue;
    for (const auto& o : ds.orders) {
      if (o.relation != b.relation || o.larger >= b.args.size() || o.smaller >= b.args.size()) continue;
      const Term& s = b.args[o.smaller];
      const Term& l = b.args[o.larger];
      if (s.is_var() && l.is_var() && s.id < n && l.id < n) edges[s.id].push_back({l.id, o.strict});
    }
  }

  // Best relation of `from` to `to`: strictly below, below or equal, unknown.
  auto compare = [&](VarId from, VarId to) {
    if (from == to) return ArgOrder::LessEq;
    std::vector<std::array<bool, 2>> seen(n, {false, false});
    std::vector<std::pair<VarId, bool>> stack{{from, false}};
    seen[from][0] = true;
    bool reached = false;
    while (!stack.empty()) {
      auto [v, strict] = stack.back();
      stack.pop_back();
      if (v == to) {
        if (strict) return ArgOrder::Less;
        reached = true;
      }
      for (const auto& e : edges[v]) {
        const bool s = strict || e.strict;
        if (!seen[e.to][s]) {
          seen[e.to][s] = true;
          stack.emplace_back(e.to, s);
        }
      }
    }
    return reached ? ArgOrder::LessEq : ArgOrder::Unknown;
  };

  for (std::size_t i = 0; i < checked; ++i) {
    const Term& t = lit.args[i];
    if (t.is_var() && t.id < n) profile[i] = compare(t.id, static_cast<VarId>(i));
  }
  return profile;
}

std::vector<RecursionProfile> recursion_profiles(const Clause& clause, const Dataset& ds, bool functional_mode) {
  std::vector<RecursionProfile> out;
  for (std::size_t i = 0; i < clause.body.size(); ++i) {
    const Literal& lit = clause.body[i];
    if (lit.kind != LiteralKind::Relation || lit.negated || lit.relation != clause.head) continue;
    Clause prefix = clause;
    prefix.body.resize(i);
    out.push_back(recursion_profile(lit, prefix, ds, functional_mode));
  }
  return out;
}

bool lexicographic_decrease(const std::vector<RecursionProfile>& profiles) {
  // Greedy: any position that no remaining profile can increase is safe to
  // take next; profiles strictly smaller there are settled.
  std::vector<const RecursionProfile*> open;
  for (const auto& p : profiles) open.push_back(&p);
  std::size_t width = 0;
  for (const auto& p : profiles) width = std::max(width, p.size());
  std::vector<bool> used(width, false);
  while (!open.empty()) {
    bool progressed = false;
    for (std::size_t pos = 0; pos < width && !progressed; ++pos) {
      if (used[pos]) continue;
      const bool safe = std::all_of(open.begin(), open.end(), [&](const RecursionProfile* p) {
        return pos < p->size() && (*p)[pos] != ArgOrder::Unknown;
      });
      const bool settles = std::any_of(open.begin(), open.end(), [&](const RecursionProfile* p) {
        return (*p)[pos] == ArgOrder::Less;
      });
      if (!safe || !settles) continue;
      used[pos] = true;
      std::erase_if(open, [&](const RecursionProfile* p) { return (*p)[pos] == ArgOrder::Less; });
      progressed = true;
    }
    if (!progressed) return false;
  }
  return true;
}

bool recursion_guard(const Literal& lit, const Clause& clause, const Dataset& ds, bool functional_mode,
                     const std::vector<RecursionProfile>* context) {
  if (lit.kind != LiteralKind::Relation || lit.relation != clause.head) return true;
  if (lit.negated || lit.args.size() != clause.arity) return false;
  const std::size_t n = clause.var_count();
  if (functional_mode) {
    for (std::size_t i = 0; i + 1 < clause.arity; ++i) {
      const Term& t = lit.args[i];
      if (t.kind == Term::Kind::Anon || (t.is_var() && t.id >= n)) return false;
    }
  }
  RecursionProfile mine = recursion_profile(lit, clause, ds, functional_mode);
  if (std::find(mine.begin(), mine.end(), ArgOrder::Less) == mine.end()) return false;
  std::vector<RecursionProfile> all = recursion_profiles(clause, ds, functional_mode);
  if (context) all.insert(all.end(), context->begin(), context->end());
  all.push_back(std::move(mine));
  return lexicographic_decrease(all);
}

// ---------------------------------------------------------------------------
// Candidate enumeration

namespace {

struct PatternSink {
  std::vector<std::vector<Term>> old_only;
  std::vector<std::vector<Term>> with_new;
};

}  // namespace

void enumerate_candidate_literals(const Clause& clause, const Dataset& ds, const EnumerationOptions& opts,
                                  const std::function<bool(const Literal&)>& visit) {
  const std::size_t n = clause.var_count();
  const bool out_free = opts.functional_mode && !opts.output_bound;
  const VarId out = clause.output_var();
  auto known = [&](VarId v) { return v < n && !(out_free && v == out); };
  bool stopped = false;
  auto emit = [&](const Literal& l) {
    if (stopped) return false;
    if (std::find(clause.body.begin(), clause.body.end(), l) != clause.body.end()) return true;
    if (!visit(l)) stopped = true;
    return !stopped;
  };
  auto type_of = [&](VarId v) { return clause.vars[v].type; };
  auto is_ordered = [&](VarId v) { return type_of(v) != kNoType && ds.type(type_of(v)).ordered; };

  // Equalities.
  for (VarId v = 0; v < n; ++v) {
    if (type_of(v) == kNoType) continue;
    if (!known(v) && !(out_free && v == out)) continue;
    for (ConstId c : ds.type(type_of(v)).theory_constants) {
      if (!emit(Literal::eq_const(v, c))) return;
    }
  }
  for (VarId a = 0; a < n; ++a) {
    for (VarId b = a + 1; b < n; ++b) {
      if (type_of(a) != type_of(b) || type_of(a) == kNoType) continue;
      const bool ok = (known(a) && known(b)) || (known(a) && out_free && b == out) || (known(b) && out_free && a == out);
      if (ok && !emit(Literal::eq_var(a, b))) return;
    }
  }
  if (opts.allow_negation) {
    for (VarId v = 0; v < n; ++v) {
      if (!known(v) || type_of(v) == kNoType) continue;
      for (ConstId c : ds.type(type_of(v)).theory_constants) {
        if (!emit(Literal::eq_const(v, c, true))) return;
      }
    }
    for (VarId a = 0; a < n; ++a) {
      for (VarId b = a + 1; b < n; ++b) {
        if (type_of(a) != type_of(b) || type_of(a) == kNoType || !known(a) || !known(b)) continue;
        if (!emit(Literal::eq_var(a, b, true))) return;
      }
    }
  }

  // Comparisons on ordered types.
  for (VarId a = 0; a < n; ++a) {
    if (!known(a) || !is_ordered(a)) continue;
    for (VarId b = a + 1; b < n; ++b) {
      if (!known(b) || type_of(b) != type_of(a)) continue;
      if (!emit(Literal::cmp_var(a, b, CmpOp::LessEq))) return;
      if (!emit(Literal::cmp_var(a, b, CmpOp::Greater))) return;
    }
  }
  for (VarId v = 0; v < n; ++v) {
    if (!known(v) || !is_ordered(v)) continue;
    std::vector<double> cuts;
    if (opts.thresholds != nullptr && v < opts.thresholds->size()) {
      cuts = (*opts.thresholds)[v];
    } else {
      std::vector<double> values;
      for (ConstId c : ds.type(type_of(v)).members) {
        if (auto x = ds.symbols->numeric(c)) values.push_back(*x);
      }
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (std::size_t i = 0; i + 1 < values.size(); ++i) cuts.push_back((values[i] + values[i + 1]) / 2.0);
    }
    for (double t : cuts) {
      if (!emit(Literal::cmp_threshold(v, t, CmpOp::LessEq))) return;
      if (!emit(Literal::cmp_threshold(v, t, CmpOp::Greater))) return;
    }
  }

  // Relation literals.
  std::vector<const Relation*> relations;
  for (const auto& r : ds.backgrounds) relations.push_back(&r);
  relations.push_back(&ds.target);

  auto patterns = [&](const Relation& rel, bool negated) {
    PatternSink sink;
    const std::size_t k = rel.arity();
    std::vector<Term> cur(k);
    std::vector<TypeId> new_types;  // types of new variables introduced so far in this literal
    std::function<void(std::size_t, bool, bool)> rec = [&](std::size_t pos, bool any_known, bool any_new) {
      if (pos == k) {
        if (!any_known) return;
        (any_new ? sink.with_new : sink.old_only).push_back(cur);
        return;
      }
      const TypeId ty = rel.signature[pos];
      for (VarId v = 0; v < n; ++v) {
        if (type_of(v) != ty) continue;
        if (known(v)) {
          cur[pos] = Term::var(v);
          rec(pos + 1, true, any_new);
        } else if (out_free && v == out && !negated) {
          cur[pos] = Term::var(v);
          rec(pos + 1, any_known, any_new);
        }
      }
      for (std::size_t j = 0; j < new_types.size(); ++j) {
        if (new_types[j] != ty || negated) continue;
        cur[pos] = Term::var(static_cast<VarId>(n + j));
        rec(pos + 1, any_known, true);
      }
      new_types.push_back(ty);
      cur[pos] = negated ? Term::anon() : Term::var(static_cast<VarId>(n + new_types.size() - 1));
      rec(pos + 1, any_known, true);
      new_types.pop_back();
    };
    rec(0, false, false);
    return sink;
  };

  auto depth_ok = [&](const std::vector<Term>& args) {
    int depth = 0;
    bool has_new = false;
    for (const auto& t : args) {
      if (t.is_var() && t.id < n) depth = std::max(depth, clause.vars[t.id].depth);
      if ((t.is_var() && t.id >= n) || t.kind == Term::Kind::Anon) has_new = true;
    }
    return !has_new || depth + 1 <= opts.max_depth;
  };

  auto emit_relation = [&](const Relation& rel, bool negated) {
    if (negated && &rel == &ds.target) return true;
    const PatternSink sink = patterns(rel, negated);
    for (const auto* group : {&sink.old_only, &sink.with_new}) {
      for (const auto& args : *group) {
        if (!depth_ok(args)) continue;
        Literal lit = Literal::rel(rel.name, args, negated);
        if (&rel == &ds.target && !recursion_guard(lit, clause, ds, opts.functional_mode, opts.recursion_context)) continue;
        if (!emit(lit)) return false;
      }
    }
    return true;
  };

  for (const Relation* rel : relations) {
    if (!emit_relation(*rel, false)) return;
  }
  if (opts.allow_negation) {
    for (const Relation* rel : relations) {
      if (!emit_relation(*rel, true)) return;
    }
  }
}

std::vector<Literal> candidate_literals(const Clause& clause, const Dataset& ds, const EnumerationOptions& opts) {
  std::vector<Literal> out;
  enumerate_candidate_literals(clause, ds, opts, [&](const Literal& l) {
    out.push_back(l);
    return true;
  });
  return out;
}

}  // namespace ffoil
