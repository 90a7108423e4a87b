#include "ffoil/taskgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace ffoil {
namespace {

using List = std::vector<int>;

std::string list_atom(const List& l) {
  std::string s = "[";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(l[i]);
  }
  return s + "]";
}

std::uint64_t vocabulary_size(int alphabet, int max_len, bool repeats) {
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (int len = 0; len <= max_len; ++len) {
    total += level;
    if (total > kMaxVocabulary) return total;
    const int choices = repeats ? alphabet : alphabet - len;
    if (choices <= 0) break;
    level *= static_cast<std::uint64_t>(choices);
  }
  return total;
}

std::vector<List> lists(int alphabet, int max_len, bool repeats) {
  if (alphabet < 1 || max_len < 0) throw Error("list vocabulary needs alphabet >= 1 and max length >= 0");
  if (vocabulary_size(alphabet, max_len, repeats) > kMaxVocabulary) {
    throw Error("list vocabulary exceeds " + std::to_string(kMaxVocabulary) + " lists");
  }
  std::vector<List> out;
  List cur;
  std::function<void(int)> extend = [&](int remaining) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int x = 1; x <= alphabet; ++x) {
      if (!repeats && std::find(cur.begin(), cur.end(), x) != cur.end()) continue;
      cur.push_back(x);
      extend(remaining - 1);
      cur.pop_back();
    }
  };
  for (int len = 0; len <= max_len; ++len) extend(len);
  return out;
}

class Builder {
 public:
  Dataset ds;

  TypeId type(const std::string& name, const std::vector<std::string>& members,
              const std::vector<std::string>& theory = {}) {
    TypeDef t;
    t.name = name;
    for (const auto& m : members) t.add_member(ds.symbols->intern(m));
    for (const auto& m : theory) t.theory_constants.push_back(ds.symbols->intern(m));
    ds.types.push_back(std::move(t));
    return ds.types.size() - 1;
  }

  Relation& target(const std::string& name, std::vector<TypeId> sig) {
    ds.target.name = name;
    ds.target.signature = std::move(sig);
    return ds.target;
  }

  Relation& background(const std::string& name, std::vector<TypeId> sig) {
    Relation r;
    r.name = name;
    r.signature = std::move(sig);
    ds.backgrounds.push_back(std::move(r));
    return ds.backgrounds.back();
  }

  void order(const std::string& rel, std::size_t smaller, std::size_t larger, bool strict) {
    ds.orders.push_back(OrderDecl{rel, smaller - 1, larger - 1, strict});
  }

  ConstId id(const std::string& s) { return ds.symbols->intern(s); }
};

// List tasks share one element type, one list type, and a cumulative
// background roster; each task sees the relations introduced before it.
class ListWorld {
 public:
  ListWorld(Builder& b, int alphabet, int max_len, bool repeats) : b_(b), alphabet_(alphabet) {
    vocab_ = lists(alphabet, max_len, repeats);
    std::vector<std::string> elems;
    for (int x = 1; x <= alphabet; ++x) elems.push_back(std::to_string(x));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      names.push_back(list_atom(vocab_[i]));
      index_.emplace(vocab_[i], i);
    }
    elem_ = b.type("elem", elems);
    list_ = b.type("list", names, {"[]"});
  }

  TypeId elem() const { return elem_; }
  TypeId list() const { return list_; }
  const std::vector<List>& vocab() const { return vocab_; }
  bool has(const List& l) const { return index_.count(l) != 0; }

  ConstId c(const List& l) { return b_.id(list_atom(l)); }
  ConstId e(int x) { return b_.id(std::to_string(x)); }

  void add(const std::string& name) {
    Relation& r = relation_for(name);
    fill(name, r);
  }

  // Fills a relation (background or target) with every in-vocabulary fact.
  void fill(const std::string& name, Relation& r) {
    auto put = [&](Tuple t) { r.positives.insert(std::move(t)); };
    if (name == "components") {
      for (const auto& l : vocab_) {
        if (l.empty()) continue;
        put({c(l), e(l.front()), c(List(l.begin() + 1, l.end()))});
      }
    } else if (name == "member") {
      for (const auto& l : vocab_) {
        for (int x = 1; x <= alphabet_; ++x) {
          if (std::find(l.begin(), l.end(), x) != l.end()) put({e(x), c(l)});
        }
      }
    } else if (name == "append") {
      for (const auto& a : vocab_) {
        for (const auto& bl : vocab_) {
          List ab = a;
          ab.insert(ab.end(), bl.begin(), bl.end());
          if (has(ab)) put({c(a), c(bl), c(ab)});
        }
      }
    } else if (name == "last") {
      for (const auto& l : vocab_) {
        if (!l.empty()) put({c(l), e(l.back())});
      }
    } else if (name == "del") {
      for (const auto& l : vocab_) {
        for (std::size_t i = 0; i < l.size(); ++i) {
          List rest = l;
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
          put({e(l[i]), c(l), c(rest)});
        }
      }
    } else if (name == "insert") {
      for (const auto& l : vocab_) {
        for (int x = 1; x <= alphabet_; ++x) {
          for (std::size_t i = 0; i <= l.size(); ++i) {
            List bigger = l;
            bigger.insert(bigger.begin() + static_cast<std::ptrdiff_t>(i), x);
            if (has(bigger)) put({e(x), c(l), c(bigger)});
          }
        }
      }
    } else if (name == "sublist") {
      for (const auto& l : vocab_) {
        put({c({}), c(l)});
        for (std::size_t i = 0; i < l.size(); ++i) {
          for (std::size_t j = i + 1; j <= l.size(); ++j) {
            put({c(List(l.begin() + static_cast<std::ptrdiff_t>(i), l.begin() + static_cast<std::ptrdiff_t>(j))), c(l)});
          }
        }
      }
    } else if (name == "permutation") {
      for (const auto& l : vocab_) {
        List p = l;
        std::sort(p.begin(), p.end());
        do {
          put({c(l), c(p)});
        } while (std::next_permutation(p.begin(), p.end()));
      }
    } else if (name == "evenlength" || name == "oddlength") {
      const std::size_t parity = name == "evenlength" ? 0 : 1;
      for (const auto& l : vocab_) {
        if (l.size() % 2 == parity) put({c(l)});
      }
    } else if (name == "reverse") {
      for (const auto& l : vocab_) put({c(l), c(List(l.rbegin(), l.rend()))});
    } else if (name == "palindrome") {
      for (const auto& l : vocab_) {
        if (std::equal(l.begin(), l.end(), l.rbegin())) put({c(l)});
      }
    } else if (name == "shift") {
      for (const auto& l : vocab_) {
        if (l.empty()) continue;
        List s(l.begin() + 1, l.end());
        s.push_back(l.front());
        put({c(l), c(s)});
      }
    } else if (name == "means") {
      for (int x = 1; x <= alphabet_; ++x) put({e(x), e(means(x))});
    } else if (name == "translate") {
      for (const auto& l : vocab_) {
        List t;
        for (int x : l) t.push_back(means(x));
        put({c(l), c(t)});
      }
    } else if (name == "partition") {
      for (int x = 1; x <= alphabet_; ++x) {
        for (const auto& l : vocab_) {
          List lo, hi;
          for (int y : l) {
            if (y < x) lo.push_back(y);
            if (y > x) hi.push_back(y);
          }
          put({e(x), c(l), c(lo), c(hi)});
        }
      }
    } else if (name == "lt") {
      for (int x = 1; x <= alphabet_; ++x) {
        for (int y = x + 1; y <= alphabet_; ++y) put({e(x), e(y)});
      }
    } else if (name == "qsort" || name == "bsort") {
      for (const auto& l : vocab_) {
        List s = l;
        std::sort(s.begin(), s.end());
        put({c(l), c(s)});
      }
    } else {
      throw Error("no list relation named '" + name + "'");
    }
  }

  std::vector<TypeId> signature(const std::string& name) const {
    static const std::map<std::string, std::string> shapes = {
        {"components", "lel"}, {"member", "el"},     {"append", "lll"},    {"last", "le"},
        {"del", "ell"},        {"insert", "ell"},    {"sublist", "ll"},    {"permutation", "ll"},
        {"evenlength", "l"},   {"oddlength", "l"},   {"reverse", "ll"},    {"palindrome", "l"},
        {"shift", "ll"},       {"means", "ee"},      {"translate", "ll"},  {"partition", "elll"},
        {"lt", "ee"},          {"qsort", "ll"},      {"bsort", "ll"}};
    std::vector<TypeId> sig;
    for (char ch : shapes.at(name)) sig.push_back(ch == 'l' ? list_ : elem_);
    return sig;
  }

  void orders(const std::string& name) {
    if (name == "components") b_.order(name, 3, 1, true);
    if (name == "append") {
      b_.order(name, 1, 3, false);
      b_.order(name, 2, 3, false);
    }
    if (name == "del") b_.order(name, 3, 2, true);
    if (name == "insert") b_.order(name, 2, 3, true);
    if (name == "sublist") b_.order(name, 1, 2, false);
    if (name == "partition") {
      b_.order(name, 3, 2, false);
      b_.order(name, 4, 2, false);
    }
  }

 private:
  Relation& relation_for(const std::string& name) {
    Relation& r = b_.background(name, signature(name));
    orders(name);
    return r;
  }

  int means(int x) const { return x % alphabet_ + 1; }

  Builder& b_;
  int alphabet_;
  std::vector<List> vocab_;
  std::map<List, std::size_t> index_;
  TypeId elem_ = 0, list_ = 0;
};

// Cumulative roster of the list-processing sequence; each task's background
// is every relation listed before it.
const std::vector<std::string>& list_roster() {
  static const std::vector<std::string> roster = {
      "components", "member",     "append",  "last",  "del",        "insert",    "sublist", "permutation",
      "evenlength", "oddlength",  "reverse", "palindrome", "shift", "means", "translate"};
  return roster;
}

std::vector<std::string> int_range(int lo, int hi) {
  std::vector<std::string> out;
  for (int v = lo; v <= hi; ++v) out.push_back(std::to_string(v));
  return out;
}

GeneratedTask list_task(const TaskSpec& s) {
  Builder b;
  ListWorld w(b, *s.alphabet, *s.max_len, *s.repeats);
  std::vector<std::string> bg;
  if (s.task == "qsort") {
    bg = {"components", "append", "partition"};
  } else if (s.task == "bsort") {
    bg = {"components", "lt"};
  } else {
    for (const auto& r : list_roster()) {
      if (r == s.task) break;
      bg.push_back(r);
    }
  }
  Relation& t = b.target(s.task, w.signature(s.task));
  w.fill(s.task, t);
  for (const auto& r : bg) w.add(r);
  GeneratedTask out;
  out.header.push_back(s.task + ": lists of length <= " + std::to_string(*s.max_len) + " over " +
                       std::to_string(*s.alphabet) + " elements" + (*s.repeats ? "" : ", no repeats"));
  std::string roster = "background:";
  for (const auto& r : bg) roster += " " + r;
  out.header.push_back(roster);
  out.dataset = std::move(b.ds);
  return out;
}

GeneratedTask plus_task(const TaskSpec& s) {
  const int hi = *s.int_hi;
  Builder b;
  const TypeId num = b.type("num", int_range(0, hi), {"0"});
  Relation& t = b.target("plus", {num, num, num});
  for (int y = 0; y <= hi; ++y) {
    for (int x = 0; x + y <= hi; ++x) {
      t.positives.insert({b.id(std::to_string(x)), b.id(std::to_string(y)), b.id(std::to_string(x + y))});
    }
  }
  Relation& dec = b.background("dec", {num, num});
  for (int x = 1; x <= hi; ++x) dec.positives.insert({b.id(std::to_string(x)), b.id(std::to_string(x - 1))});
  b.order("dec", 2, 1, true);
  GeneratedTask out;
  out.header.push_back("plus over 0.." + std::to_string(hi));
  out.dataset = std::move(b.ds);
  return out;
}

GeneratedTask gcd_task(const TaskSpec& s) {
  const int lo = *s.int_lo, hi = *s.int_hi;
  Builder b;
  const TypeId num = b.type("num", int_range(lo, hi));
  auto n = [&](int v) { return b.id(std::to_string(v)); };
  Relation& t = b.target("gcd", {num, num, num});
  for (int x = lo; x <= hi; ++x) {
    for (int y = lo; y <= hi; ++y) {
      const int g = std::gcd(x, y);
      if (g >= lo) t.positives.insert({n(x), n(y), n(g)});
    }
  }
  Relation& plus = b.background("plus", {num, num, num});
  for (int x = lo; x <= hi; ++x) {
    for (int y = lo; y <= hi; ++y) {
      if (x + y <= hi && x + y >= lo) plus.positives.insert({n(x), n(y), n(x + y)});
    }
  }
  if (lo >= 1) {
    b.order("plus", 1, 3, true);
    b.order("plus", 2, 3, true);
  }
  GeneratedTask out;
  out.header.push_back("gcd over " + std::to_string(lo) + ".." + std::to_string(hi));
  out.dataset = std::move(b.ds);
  return out;
}

GeneratedTask ackermann_task(const TaskSpec& s) {
  const int hi = *s.int_hi;
  const long cap = hi + 1L;
  // Values above `hi` saturate at hi+1; the function is increasing in its
  // second argument, so saturation is preserved through the recursion.
  std::map<std::pair<long, long>, long> memo;
  std::function<long(long, long)> ack = [&](long m, long n) -> long {
    if (m == 0) return std::min(n + 1, cap);
    if (n >= cap) return cap;
    const auto key = std::make_pair(m, n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    long v;
    if (n == 0) {
      v = ack(m - 1, 1);
    } else {
      const long inner = ack(m, n - 1);
      v = inner >= cap ? cap : ack(m - 1, inner);
    }
    memo[key] = v;
    return v;
  };
  Builder b;
  const TypeId num = b.type("num", int_range(0, hi), {"0"});
  auto n = [&](long v) { return b.id(std::to_string(v)); };
  Relation& t = b.target("ackermann", {num, num, num});
  for (long m = 0; m <= hi; ++m) {
    for (long k = 0; k <= hi; ++k) {
      const long v = ack(m, k);
      if (v <= hi) t.positives.insert({n(m), n(k), n(v)});
    }
  }
  Relation& succ = b.background("succ", {num, num});
  for (long x = 0; x < hi; ++x) succ.positives.insert({n(x), n(x + 1)});
  b.order("succ", 1, 2, true);
  GeneratedTask out;
  out.header.push_back("ackermann over 0.." + std::to_string(hi));
  out.dataset = std::move(b.ds);
  return out;
}

bool is_list_task(const std::string& t) {
  const auto& r = list_roster();
  return t == "qsort" || t == "bsort" || std::find(r.begin(), r.end(), t) != r.end();
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {"plus",  "append", "last", "reverse",   "shift",    "translate",
                                                 "qsort", "bsort",  "gcd",  "ackermann", "noisy-fn"};
  return names;
}

TaskSpec TaskSpec::resolved() const {
  TaskSpec s = *this;
  const auto& names = task_names();
  if (std::find(names.begin(), names.end(), task) == names.end()) throw Error("unknown task '" + task + "'");
  const bool sorting = task == "qsort" || task == "bsort";
  if (task != "plus" && task != "gcd" && task != "ackermann" && task != "noisy-fn") {
    if (!s.alphabet) s.alphabet = sorting ? 4 : 3;
    if (!s.max_len) s.max_len = sorting ? 4 : 3;
    if (!s.repeats) s.repeats = !sorting;
    if (*s.alphabet < 1 || *s.alphabet > 9) throw Error("alphabet must be in 1..9");
    if (*s.max_len < 0) throw Error("max length must be >= 0");
    if (vocabulary_size(*s.alphabet, *s.max_len, *s.repeats) > kMaxVocabulary) {
      throw Error("list vocabulary exceeds " + std::to_string(kMaxVocabulary) + " lists");
    }
  }
  if (task == "plus") {
    s.int_lo = 0;
    if (!s.int_hi) s.int_hi = 2;
  } else if (task == "gcd") {
    if (!s.int_lo) s.int_lo = 1;
    if (!s.int_hi) s.int_hi = 20;
    if (*s.int_lo < 1) throw Error("gcd range must start at 1 or above");
  } else if (task == "ackermann") {
    s.int_lo = 0;
    if (!s.int_hi) s.int_hi = 20;
  }
  if (s.int_hi && (*s.int_hi < *s.int_lo || *s.int_hi > 100'000)) throw Error("integer bound out of range");
  if (task == "noisy-fn") {
    if (!(noise_rate >= 0.0 && noise_rate < 1.0)) throw Error("noise rate must lie in [0, 1)");
    if (n_inputs < 1 || n_inputs > kMaxVocabulary) throw Error("noisy-fn needs 1..100000 inputs");
    if (n_outputs < 2 || n_outputs > 100) throw Error("noisy-fn needs 2..100 outputs");
    if (rule_depth < 1 || rule_depth > 8) throw Error("noisy-fn rule depth must be in 1..8");
  }
  return s;
}

std::string GeneratedTask::text() const {
  std::string out;
  for (const auto& line : header) out += "% " + line + "\n";
  return out + render_dataset(dataset);
}

std::vector<std::string> list_vocabulary(int alphabet, int max_len, bool repeats) {
  std::vector<std::string> out;
  for (const auto& l : lists(alphabet, max_len, repeats)) out.push_back(list_atom(l));
  return out;
}

TypeDef gen_list_vocabulary(SymbolTable& symbols, int alphabet, int max_len, bool repeats) {
  TypeDef t;
  t.name = "list";
  for (const auto& s : list_vocabulary(alphabet, max_len, repeats)) t.add_member(symbols.intern(s));
  t.theory_constants.push_back(symbols.intern("[]"));
  return t;
}

GeneratedTask gen_task(const TaskSpec& spec) {
  const TaskSpec s = spec.resolved();
  if (s.task == "plus") return plus_task(s);
  if (s.task == "gcd") return gcd_task(s);
  if (s.task == "ackermann") return ackermann_task(s);
  if (s.task == "noisy-fn") return gen_noisy_functional(s.n_inputs, s.n_outputs, s.rule_depth, s.noise_rate, s.seed);
  if (is_list_task(s.task)) return list_task(s);
  throw Error("unknown task '" + s.task + "'");
}

GeneratedTask gen_noisy_functional(std::size_t n_inputs, std::size_t n_outputs, std::size_t rule_depth,
                                   double noise_rate, std::uint64_t seed) {
  TaskSpec check;
  check.task = "noisy-fn";
  check.n_inputs = n_inputs;
  check.n_outputs = n_outputs;
  check.rule_depth = rule_depth;
  check.noise_rate = noise_rate;
  check.resolved();

  // Raw engine draws only, so the file is identical across standard libraries.
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const std::size_t n_features = rule_depth + 3;

  std::vector<std::vector<bool>> features(n_inputs, std::vector<bool>(n_features));
  for (auto& row : features) {
    for (std::size_t f = 0; f < n_features; ++f) row[f] = (rng() >> 32) & 1;
  }

  struct Test {
    std::size_t feature;
    bool positive;
  };
  std::vector<std::vector<Test>> rules(n_outputs - 1);
  for (auto& rule : rules) {
    std::vector<std::size_t> order(n_features);
    for (std::size_t i = 0; i < n_features; ++i) order[i] = i;
    for (std::size_t i = 0; i < rule_depth; ++i) {
      std::swap(order[i], order[i + below(n_features - i)]);
      rule.push_back(Test{order[i], ((rng() >> 32) & 1) != 0});
    }
  }

  std::vector<std::size_t> output(n_inputs, 0);
  for (std::size_t i = 0; i < n_inputs; ++i) {
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const bool fires = std::all_of(rules[r].begin(), rules[r].end(),
                                     [&](const Test& t) { return features[i][t.feature] == t.positive; });
      if (fires) {
        output[i] = r + 1;
        break;
      }
    }
  }

  const auto n_noisy = static_cast<std::size_t>(std::llround(noise_rate * static_cast<double>(n_inputs)));
  std::vector<std::size_t> pick(n_inputs);
  for (std::size_t i = 0; i < n_inputs; ++i) pick[i] = i;
  for (std::size_t i = 0; i < n_noisy; ++i) {
    std::swap(pick[i], pick[i + below(n_inputs - i)]);
    const std::size_t e = pick[i];
    output[e] = (output[e] + 1 + below(n_outputs - 1)) % n_outputs;
  }

  Builder b;
  std::vector<std::string> entities, outs;
  for (std::size_t i = 0; i < n_inputs; ++i) entities.push_back("e" + std::to_string(i));
  for (std::size_t o = 0; o < n_outputs; ++o) outs.push_back("o" + std::to_string(o));
  const TypeId ent = b.type("entity", entities);
  const TypeId out_t = b.type("out", outs, outs);
  Relation& t = b.target("f", {ent, out_t});
  for (std::size_t i = 0; i < n_inputs; ++i) t.positives.insert({b.id(entities[i]), b.id(outs[output[i]])});
  for (std::size_t f = 0; f < n_features; ++f) {
    Relation& r = b.background("p" + std::to_string(f), {ent});
    for (std::size_t i = 0; i < n_inputs; ++i) {
      if (features[i][f]) r.positives.insert({b.id(entities[i])});
    }
  }

  GeneratedTask g;
  std::ostringstream params;
  params << "noisy-fn: " << n_inputs << " inputs, " << n_outputs << " outputs, depth " << rule_depth << ", noise "
         << noise_rate << ", seed " << seed;
  g.header.push_back(params.str());
  g.header.push_back("hidden rules:");
  for (std::size_t r = 0; r < rules.size(); ++r) {
    std::string line = "  f(A," + outs[r + 1] + ") :- ";
    for (std::size_t i = 0; i < rules[r].size(); ++i) {
      const std::string lit = "p" + std::to_string(rules[r][i].feature) + "(A)";
      line += (i ? ", " : "") + (rules[r][i].positive ? lit : "not(" + lit + ")");
    }
    g.header.push_back(line + ", !.");
  }
  g.header.push_back("  f(A,o0).");
  g.header.push_back("corrupted outputs: " + std::to_string(n_noisy));
  g.dataset = std::move(b.ds);
  return g;
}

bool has_open_domain_oracle(const std::string& task) {
  static const std::vector<std::string> tasks = {"append", "last",  "reverse", "shift",
                                                 "translate", "qsort", "bsort"};
  return std::find(tasks.begin(), tasks.end(), task) != tasks.end();
}

std::vector<Tuple> open_domain_tuples(const TaskSpec& spec, std::size_t n, int max_len, std::uint64_t seed,
                                      SymbolTable& symbols) {
  const TaskSpec s = spec.resolved();
  if (!has_open_domain_oracle(s.task)) throw Error("no open-domain oracle for task '" + s.task + "'");
  if (max_len < 1) throw Error("open-domain lists need max length >= 1");
  const int alphabet = *s.alphabet;
  const bool sorting = s.task == "qsort" || s.task == "bsort";
  std::mt19937_64 rng(seed);
  auto draw = [&](int min_len) {
    std::uniform_int_distribution<int> len(min_len, max_len);
    List l(static_cast<std::size_t>(len(rng)));
    if (sorting) {
      List pool(static_cast<std::size_t>(std::max(alphabet, max_len)));
      std::iota(pool.begin(), pool.end(), 1);
      std::shuffle(pool.begin(), pool.end(), rng);
      std::copy_n(pool.begin(), l.size(), l.begin());
    } else {
      std::uniform_int_distribution<int> elem(1, alphabet);
      for (auto& x : l) x = elem(rng);
    }
    return l;
  };
  auto id = [&](const List& l) { return symbols.intern(list_atom(l)); };
  std::vector<Tuple> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.task == "append") {
      const List x = draw(0), y = draw(0);
      List z = x;
      z.insert(z.end(), y.begin(), y.end());
      out.push_back({id(x), id(y), id(z)});
    } else if (s.task == "last") {
      const List x = draw(1);
      out.push_back({id(x), symbols.intern(std::to_string(x.back()))});
    } else if (s.task == "reverse") {
      const List x = draw(0);
      out.push_back({id(x), id(List(x.rbegin(), x.rend()))});
    } else if (s.task == "shift") {
      const List x = draw(1);
      List r(x.begin() + 1, x.end());
      r.push_back(x.front());
      out.push_back({id(x), id(r)});
    } else if (s.task == "translate") {
      const List x = draw(0);
      List t;
      for (int v : x) t.push_back(v % alphabet + 1);
      out.push_back({id(x), id(t)});
    } else {
      const List x = draw(0);
      List sorted = x;
      std::sort(sorted.begin(), sorted.end());
      out.push_back({id(x), id(sorted)});
    }
  }
  return out;
}

}  // namespace ffoil
