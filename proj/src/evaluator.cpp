#include "ffoil/evaluator.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "ffoil/bindings.hpp"

namespace ffoil {

bool Query::standard() const {
  if (args.empty() || args.back().has_value()) return false;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (!args[i]) return false;
  }
  return true;
}

Query Query::standard_query(std::string relation, std::span<const ConstId> inputs) {
  Query q;
  q.relation = std::move(relation);
  for (ConstId c : inputs) q.args.emplace_back(c);
  q.args.emplace_back(std::nullopt);
  return q;
}

namespace {

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quoted) {
      if (c == '\'') {
        if (i + 1 < s.size() && s[i + 1] == '\'') {
          cur.push_back('\'');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
      continue;
    }
    if (c == '\'') {
      quoted = true;
    } else if (c == '[') {
      ++depth;
      cur.push_back(c);
    } else if (c == ']') {
      --depth;
      cur.push_back(c);
    } else if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Query parse_query(std::string_view text, SymbolTable& symbols) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.back() == '?') text.remove_suffix(1);
  if (!text.empty() && text.back() == '.') text.remove_suffix(1);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')') {
    throw Error("query must look like rel(arg, ..., X): '" + std::string(text) + "'");
  }
  Query q;
  std::string_view name = text.substr(0, open);
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.remove_prefix(1);
  q.relation = std::string(name);
  for (const auto& a : split_top_level(text.substr(open + 1, text.size() - open - 2))) {
    if (a.empty()) throw Error("empty query argument");
    if (std::isupper(static_cast<unsigned char>(a[0])) || a[0] == '_') {
      q.args.emplace_back(std::nullopt);
    } else {
      q.args.emplace_back(symbols.intern(a));
    }
  }
  return q;
}

bool is_builtin_relation(std::string_view name) {
  static constexpr std::string_view kNames[] = {"components", "member", "append", "last", "dec", "succ", "plus", "lt"};
  for (auto n : kNames) {
    if (n == name) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

namespace {

struct Flow {
  enum Kind : std::uint8_t { Continue, Halt, Cut };
  Kind kind = Continue;
  std::uint64_t frame = 0;
};

class Cont {
 public:
  template <typename F>
  explicit Cont(F& f) : obj_(&f), fn_([](void* o) { return (*static_cast<F*>(o))(); }) {}
  Flow operator()() const { return fn_(obj_); }

 private:
  void* obj_;
  Flow (*fn_)(void*);
};

constexpr std::uint32_t kAnonSlot = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kMaxNesting = 6000;

}  // namespace

class Evaluator::Machine {
 public:
  Machine(const Definition& def, const Dataset& ds, EvalOptions options) : def_(def), ds_(ds), opts_(options) {
    for (const Clause* c : def_.all_clauses()) clauses_.push_back(compile(*c));
    if (def_.default_clause) clauses_.back().cut = false;
    // The default clause answers the top-level query only; recursive calls
    // see the learned clauses.
    recursive_clauses_ = clauses_.size() - (def_.default_clause ? 1 : 0);
  }

  EvalResult run(const Query& q, bool first_only) {
    EvalResult result;
    goals_ = 0;
    exhausted_ = false;
    error_.reset();
    depth_ = 0;
    nesting_ = 0;
    cells_.clear();
    trail_.clear();

    std::vector<std::uint32_t> args;
    for (const auto& a : q.args) {
      const auto cell = alloc(1);
      if (a) cells_[cell] = Cell{*a, Cell::Const};
      args.push_back(cell);
    }
    auto record = [&]() {
      Tuple t;
      for (auto a : args) {
        const Cell& c = cells_[deref(a)];
        t.push_back(c.tag == Cell::Const ? c.value : kUndetermined);
      }
      result.answers.push_back(std::move(t));
      return first_only ? Flow{Flow::Halt, 0} : Flow{Flow::Continue, 0};
    };
    call(q.relation, args, Cont(record));
    result.goal_count = goals_;
    result.budget_exhausted = exhausted_;
    result.error = error_;
    return result;
  }

 private:
  struct Cell {
    enum Tag : std::uint8_t { Unbound, Const, Ref };
    std::uint32_t value = 0;
    Tag tag = Unbound;
  };

  struct CompiledLiteral {
    const Literal* lit;
    std::vector<std::uint32_t> slots;
    bool head = false;  // folded into the head when rendered; not a counted goal
  };

  struct CompiledClause {
    std::uint32_t cells = 0;
    std::vector<std::pair<std::uint32_t, ConstId>> constants;
    std::vector<CompiledLiteral> body;
    bool cut = false;
  };

  CompiledClause compile(const Clause& c) {
    CompiledClause cc;
    cc.cells = static_cast<std::uint32_t>(c.var_count());
    cc.cut = c.cut;
    const std::vector<bool> folded = head_folded_literals(c);
    for (std::size_t li = 0; li < c.body.size(); ++li) {
      const Literal& lit = c.body[li];
      CompiledLiteral cl{&lit, {}, folded[li]};
      for (const auto& t : lit.args) {
        switch (t.kind) {
          case Term::Kind::Var:
            cl.slots.push_back(t.id);
            break;
          case Term::Kind::Anon:
            cl.slots.push_back(kAnonSlot);
            break;
          case Term::Kind::Const:
            cc.constants.emplace_back(cc.cells, t.id);
            cl.slots.push_back(cc.cells++);
            break;
        }
      }
      cc.body.push_back(std::move(cl));
    }
    return cc;
  }

  std::uint32_t alloc(std::uint32_t n) {
    const auto base = static_cast<std::uint32_t>(cells_.size());
    cells_.resize(cells_.size() + n);
    return base;
  }

  std::uint32_t deref(std::uint32_t i) const {
    while (cells_[i].tag == Cell::Ref) i = cells_[i].value;
    return i;
  }

  std::optional<ConstId> value(std::uint32_t i) const {
    const Cell& c = cells_[deref(i)];
    if (c.tag == Cell::Const) return c.value;
    return std::nullopt;
  }

  void set(std::uint32_t i, Cell c) {
    cells_[i] = c;
    trail_.push_back(i);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      cells_[trail_.back()] = Cell{};
      trail_.pop_back();
    }
  }

  bool unify(std::uint32_t a, std::uint32_t b) {
    a = deref(a);
    b = deref(b);
    if (a == b) return true;
    const Cell& ca = cells_[a];
    const Cell& cb = cells_[b];
    if (ca.tag == Cell::Const && cb.tag == Cell::Const) return ca.value == cb.value;
    if (ca.tag == Cell::Unbound && cb.tag == Cell::Unbound) {
      if (a > b) set(a, Cell{b, Cell::Ref});
      else set(b, Cell{a, Cell::Ref});
      return true;
    }
    if (ca.tag == Cell::Unbound) set(a, Cell{cb.value, Cell::Const});
    else set(b, Cell{ca.value, Cell::Const});
    return true;
  }

  bool unify_const(std::uint32_t a, ConstId c) {
    a = deref(a);
    if (cells_[a].tag == Cell::Const) return cells_[a].value == c;
    set(a, Cell{c, Cell::Const});
    return true;
  }

  Flow halt_with(std::string msg) {
    if (!error_) error_ = std::move(msg);
    return {Flow::Halt, 0};
  }

  Flow body(const CompiledClause& cc, std::uint32_t base, std::size_t i, std::uint64_t frame, Cont k) {
    if (i == cc.body.size()) {
      if (cc.cut && opts_.cuts) {
        const Flow f = k();
        if (f.kind == Flow::Continue) return {Flow::Cut, frame};
        return f;
      }
      return k();
    }
    const bool counted = !cc.body[i].head;
    if (counted) ++goals_;
    if (goals_ > opts_.budget || nesting_ >= kMaxNesting) {
      exhausted_ = true;
      return {Flow::Halt, 0};
    }
    ++nesting_;
    auto next = [&]() {
      const Flow f = body(cc, base, i + 1, frame, k);
      // Backtracking into literal i is a retry and counts as another attempt.
      if (f.kind == Flow::Continue && counted) ++goals_;
      return f;
    };
    const Flow f = literal(cc.body[i], base, Cont(next));
    --nesting_;
    return f;
  }

  Flow literal(const CompiledLiteral& cl, std::uint32_t base, Cont k) {
    const Literal& lit = *cl.lit;
    auto cell = [&](std::size_t i) { return base + cl.slots[i]; };
    switch (lit.kind) {
      case LiteralKind::Relation: {
        std::vector<std::uint32_t> args;
        args.reserve(cl.slots.size());
        for (auto s : cl.slots) args.push_back(s == kAnonSlot ? kAnonSlot : base + s);
        if (!lit.negated) return call(lit.relation, args, k);
        for (auto a : args) {
          if (a != kAnonSlot && !value(a)) return halt_with("instantiation error in not(" + lit.relation + "(...))");
        }
        const std::uint64_t id = next_frame_++;
        auto stop = [id]() { return Flow{Flow::Cut, id}; };
        const Flow f = call(lit.relation, args, Cont(stop));
        if (f.kind == Flow::Cut && f.frame == id) return {Flow::Continue, 0};
        if (f.kind != Flow::Continue) return f;
        return k();
      }
      case LiteralKind::EqVar:
      case LiteralKind::EqConst: {
        if (lit.negated) {
          const auto a = value(cell(0)), b = value(cell(1));
          if (!a || !b) return halt_with("instantiation error in \\=");
          return *a != *b ? k() : Flow{Flow::Continue, 0};
        }
        const std::size_t mark = trail_.size();
        Flow f{Flow::Continue, 0};
        if (unify(cell(0), cell(1))) f = k();
        undo(mark);
        return f;
      }
      case LiteralKind::CmpVar:
      case LiteralKind::CmpThreshold: {
        const auto a = value(cell(0));
        std::optional<ConstId> b;
        if (lit.kind == LiteralKind::CmpVar) b = value(cell(1));
        if (!a || (lit.kind == LiteralKind::CmpVar && !b)) return halt_with("instantiation error in comparison");
        const auto x = ds_.symbols->numeric(*a);
        const auto y = lit.kind == LiteralKind::CmpVar ? ds_.symbols->numeric(*b) : std::optional<double>(lit.threshold);
        if (!x || !y) return {Flow::Continue, 0};
        const bool ok = lit.op == CmpOp::LessEq ? *x <= *y : *x > *y;
        return ok ? k() : Flow{Flow::Continue, 0};
      }
    }
    return {Flow::Continue, 0};
  }

  Flow call(const std::string& name, const std::vector<std::uint32_t>& args, Cont k) {
    if (name == def_.target) {
      if (args.size() != def_.arity) return halt_with("arity mismatch calling " + name);
      if (def_.ordered && args.back() != kAnonSlot && value(args.back())) return call_checked(args, k);
      return call_defined(args, k);
    }
    if (opts_.intensional && is_builtin_relation(name)) {
      std::vector<std::optional<ConstId>> in;
      for (auto a : args) in.push_back(a == kAnonSlot ? std::nullopt : value(a));
      auto sols = builtin(name, in);
      if (!sols) return halt_with("instantiation error calling built-in " + name);
      return iterate(*sols, args, k);
    }
    const Relation* rel = ds_.find_relation(name);
    if (rel == nullptr) return halt_with("unknown relation '" + name + "'");
    if (rel->arity() != args.size()) return halt_with("arity mismatch calling " + name);
    auto& index = indexes_.try_emplace(name, *rel).first->second;
    std::uint32_t mask = 0;
    Tuple key;
    for (std::size_t p = 0; p < args.size(); ++p) {
      if (args[p] == kAnonSlot) continue;
      if (auto v = value(args[p])) {
        mask |= 1u << p;
        key.push_back(*v);
      }
    }
    const auto& ids = index.lookup(mask, key);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const Tuple& t = rel->positives[ids[j]];
      const std::size_t mark = trail_.size();
      bool ok = true;
      for (std::size_t p = 0; p < args.size() && ok; ++p) {
        if (args[p] != kAnonSlot) ok = unify_const(args[p], t[p]);
      }
      Flow f{Flow::Continue, 0};
      if (ok) f = k();
      undo(mark);
      if (f.kind != Flow::Continue) return f;
    }
    return {Flow::Continue, 0};
  }

  Flow iterate(const std::vector<Tuple>& sols, const std::vector<std::uint32_t>& args, Cont k) {
    for (const auto& t : sols) {
      const std::size_t mark = trail_.size();
      bool ok = true;
      for (std::size_t p = 0; p < args.size() && ok; ++p) {
        if (args[p] != kAnonSlot) ok = unify_const(args[p], t[p]);
      }
      Flow f{Flow::Continue, 0};
      if (ok) f = k();
      undo(mark);
      if (f.kind != Flow::Continue) return f;
    }
    return {Flow::Continue, 0};
  }

  // Ordered definitions answer standard queries; a call with a bound output
  // asks for the first answer and compares it.
  Flow call_checked(const std::vector<std::uint32_t>& args, Cont k) {
    const std::size_t cell_mark = cells_.size();
    std::vector<std::uint32_t> open = args;
    open.back() = alloc(1);
    const std::uint32_t out = open.back();
    const std::uint64_t id = next_frame_++;
    auto first = [&]() {
      const std::size_t mark = trail_.size();
      Flow f{Flow::Continue, 0};
      if (unify(out, args.back())) f = k();
      undo(mark);
      return f.kind == Flow::Continue ? Flow{Flow::Cut, id} : f;
    };
    const Flow f = call_defined(open, Cont(first));
    cells_.resize(cell_mark);
    if (f.kind == Flow::Cut && f.frame == id) return {Flow::Continue, 0};
    return f;
  }

  Flow call_defined(const std::vector<std::uint32_t>& args, Cont k) {
    if (depth_ >= opts_.max_call_depth) {
      exhausted_ = true;
      return {Flow::Halt, 0};
    }
    ++depth_;
    const std::uint64_t frame = next_frame_++;
    Flow result{Flow::Continue, 0};
    const std::size_t n = depth_ > 1 ? recursive_clauses_ : clauses_.size();
    for (std::size_t ci = 0; ci < n; ++ci) {
      const CompiledClause& cc = clauses_[ci];
      const std::size_t cell_mark = cells_.size();
      const std::size_t trail_mark = trail_.size();
      const std::uint32_t base = alloc(cc.cells);
      for (const auto& [slot, c] : cc.constants) cells_[base + slot] = Cell{c, Cell::Const};
      bool ok = true;
      for (std::size_t i = 0; i < args.size() && ok; ++i) {
        // Anonymous arguments only arise under negation; they match anything.
        if (args[i] != kAnonSlot) ok = unify(base + static_cast<std::uint32_t>(i), args[i]);
      }
      Flow f{Flow::Continue, 0};
      if (ok) f = body(cc, base, 0, frame, k);
      undo(trail_mark);
      cells_.resize(cell_mark);
      if (f.kind == Flow::Cut && f.frame == frame) break;
      if (f.kind != Flow::Continue) {
        result = f;
        break;
      }
    }
    --depth_;
    return result;
  }

  // Built-ins over list atoms `[a,b,...]` and natural numbers.

  const std::vector<ConstId>* parse_list(ConstId c) {
    auto it = lists_.find(c);
    if (it != lists_.end()) return it->second ? &*it->second : nullptr;
    const std::string& s = ds_.symbols->name(c);
    std::optional<std::vector<ConstId>> parsed;
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
      parsed.emplace();
      if (s.size() > 2) {
        for (const auto& e : split_top_level(std::string_view(s).substr(1, s.size() - 2))) {
          parsed->push_back(ds_.symbols->intern(e));
        }
      }
    }
    auto [pos, _] = lists_.emplace(c, std::move(parsed));
    return pos->second ? &*pos->second : nullptr;
  }

  ConstId make_list(const std::vector<ConstId>& items) {
    std::string s = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) s += ',';
      s += ds_.symbols->name(items[i]);
    }
    s += ']';
    return ds_.symbols->intern(s);
  }

  std::optional<long long> natural(ConstId c) const {
    const auto v = ds_.symbols->numeric(c);
    if (!v || *v < 0 || std::floor(*v) != *v) return std::nullopt;
    return static_cast<long long>(*v);
  }

  ConstId make_natural(long long n) { return ds_.symbols->intern(std::to_string(n)); }

  std::optional<std::vector<Tuple>> builtin(const std::string& name, const std::vector<std::optional<ConstId>>& a) {
    std::vector<Tuple> out;
    if (name == "components" && a.size() == 3) {
      if (a[0]) {
        const auto* l = parse_list(*a[0]);
        if (l != nullptr && !l->empty()) out.push_back({*a[0], l->front(), make_list({l->begin() + 1, l->end()})});
        return out;
      }
      if (a[1] && a[2]) {
        const auto* t = parse_list(*a[2]);
        if (t == nullptr) return out;
        std::vector<ConstId> items{*a[1]};
        items.insert(items.end(), t->begin(), t->end());
        out.push_back({make_list(items), *a[1], *a[2]});
        return out;
      }
      return std::nullopt;
    }
    if (name == "member" && a.size() == 2) {
      if (!a[1]) return std::nullopt;
      if (const auto* l = parse_list(*a[1])) {
        for (ConstId e : *l) out.push_back({e, *a[1]});
      }
      return out;
    }
    if (name == "append" && a.size() == 3) {
      if (a[0] && a[1]) {
        const auto* x = parse_list(*a[0]);
        const auto* y = parse_list(*a[1]);
        if (x == nullptr || y == nullptr) return out;
        std::vector<ConstId> z = *x;
        z.insert(z.end(), y->begin(), y->end());
        out.push_back({*a[0], *a[1], make_list(z)});
        return out;
      }
      if (a[2]) {
        const auto* zp = parse_list(*a[2]);
        if (zp == nullptr) return out;
        const std::vector<ConstId> z = *zp;
        for (std::size_t i = 0; i <= z.size(); ++i) {
          out.push_back({make_list({z.begin(), z.begin() + static_cast<std::ptrdiff_t>(i)}),
                         make_list({z.begin() + static_cast<std::ptrdiff_t>(i), z.end()}), *a[2]});
        }
        return out;
      }
      return std::nullopt;
    }
    if (name == "last" && a.size() == 2) {
      if (!a[0]) return std::nullopt;
      const auto* l = parse_list(*a[0]);
      if (l != nullptr && !l->empty()) out.push_back({*a[0], l->back()});
      return out;
    }
    if ((name == "dec" || name == "succ") && a.size() == 2) {
      // dec(A,B): B = A-1; succ(A,B): B = A+1.
      const long long step = name == "dec" ? -1 : 1;
      if (a[0]) {
        const auto n = natural(*a[0]);
        if (n && *n + step >= 0) out.push_back({*a[0], make_natural(*n + step)});
        return out;
      }
      if (a[1]) {
        const auto n = natural(*a[1]);
        if (n && *n - step >= 0) out.push_back({make_natural(*n - step), *a[1]});
        return out;
      }
      return std::nullopt;
    }
    if (name == "plus" && a.size() == 3) {
      std::optional<long long> x, y, z;
      if (a[0]) x = natural(*a[0]);
      if (a[1]) y = natural(*a[1]);
      if (a[2]) z = natural(*a[2]);
      if ((a[0] && !x) || (a[1] && !y) || (a[2] && !z)) return out;
      if (x && y) {
        out.push_back({*a[0], *a[1], make_natural(*x + *y)});
      } else if (x && z) {
        if (*z >= *x) out.push_back({*a[0], make_natural(*z - *x), *a[2]});
      } else if (y && z) {
        if (*z >= *y) out.push_back({make_natural(*z - *y), *a[1], *a[2]});
      } else {
        return std::nullopt;
      }
      return out;
    }
    if (name == "lt" && a.size() == 2) {
      if (!a[0] || !a[1]) return std::nullopt;
      const auto x = ds_.symbols->numeric(*a[0]);
      const auto y = ds_.symbols->numeric(*a[1]);
      if (x && y && *x < *y) out.push_back({*a[0], *a[1]});
      return out;
    }
    return std::nullopt;
  }

  const Definition def_;
  const Dataset& ds_;
  EvalOptions opts_;
  std::vector<CompiledClause> clauses_;
  std::size_t recursive_clauses_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::uint32_t> trail_;
  std::map<std::string, RelationIndex, std::less<>> indexes_;
  std::unordered_map<ConstId, std::optional<std::vector<ConstId>>> lists_;
  std::uint64_t goals_ = 0;
  std::uint64_t next_frame_ = 1;
  std::size_t depth_ = 0;
  std::size_t nesting_ = 0;
  bool exhausted_ = false;
  std::optional<std::string> error_;
};

Evaluator::Evaluator(const Definition& def, const Dataset& ds, EvalOptions options)
    : machine_(std::make_unique<Machine>(def, ds, options)), target_(def.target.empty() ? ds.target.name : def.target) {}

Evaluator::~Evaluator() = default;

EvalResult Evaluator::solve(const Query& q, bool first_only) { return machine_->run(q, first_only); }

std::optional<ConstId> Evaluator::answer_standard_query(std::span<const ConstId> inputs, EvalResult* detail) {
  EvalResult r = machine_->run(Query::standard_query(target_, inputs), true);
  std::optional<ConstId> out;
  if (!r.answers.empty() && r.answers.front().back() != kUndetermined) out = r.answers.front().back();
  if (detail != nullptr) *detail = std::move(r);
  return out;
}

bool Evaluator::holds(std::span<const ConstId> tuple, EvalResult* detail) {
  Query q;
  q.relation = target_;
  for (ConstId c : tuple) q.args.emplace_back(c);
  EvalResult r = machine_->run(q, true);
  const bool ok = !r.answers.empty();
  if (detail != nullptr) *detail = std::move(r);
  return ok;
}

EvalResult solve(const Query& q, const Definition& def, const Dataset& ds, EvalOptions options) {
  return Evaluator(def, ds, options).solve(q);
}

std::optional<ConstId> answer_standard_query(const Definition& def, std::span<const ConstId> inputs, const Dataset& ds,
                                             EvalOptions options) {
  return Evaluator(def, ds, options).answer_standard_query(inputs);
}

ScoreResult score(const Definition& def, const std::vector<Tuple>& tests, const Dataset& ds, EvalOptions options) {
  ScoreResult result;
  Evaluator ev(def, ds, options);
  for (const auto& t : tests) {
    Verdict v;
    v.tuple = t;
    if (!t.empty()) {
      EvalResult detail;
      v.got = ev.answer_standard_query(std::span<const ConstId>(t).first(t.size() - 1), &detail);
      v.budget_exhausted = detail.budget_exhausted;
      v.correct = v.got && *v.got == t.back();
    }
    if (v.correct) ++result.correct;
    result.verdicts.push_back(std::move(v));
  }
  result.accuracy = tests.empty() ? 0.0 : static_cast<double>(result.correct) / static_cast<double>(tests.size());
  return result;
}

ScoreResult score_ground(const Definition& def, const std::vector<Tuple>& tests, const Dataset& ds,
                         EvalOptions options) {
  ScoreResult result;
  Evaluator ev(def, ds, options);
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const Tuple& t = tests[i];
    Verdict v;
    v.tuple = t;
    EvalResult detail;
    bool ok = !t.empty() && ev.holds(t, &detail);
    v.budget_exhausted = detail.budget_exhausted;
    if (ok) {
      v.got = t.back();
      for (std::size_t j = 1; j < tests.size(); ++j) {
        const Tuple& other = tests[(i + j) % tests.size()];
        if (other.back() == t.back()) continue;
        Tuple wrong = t;
        wrong.back() = other.back();
        if (ev.holds(wrong, &detail)) {
          ok = false;
          v.got = other.back();
        }
        v.budget_exhausted = v.budget_exhausted || detail.budget_exhausted;
        break;
      }
    }
    v.correct = ok;
    if (ok) ++result.correct;
    result.verdicts.push_back(std::move(v));
  }
  result.accuracy = tests.empty() ? 0.0 : static_cast<double>(result.correct) / static_cast<double>(tests.size());
  return result;
}

}  // namespace ffoil
