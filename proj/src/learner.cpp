#include "ffoil/learner.hpp"

#include "grow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <unordered_set>

namespace ffoil {

namespace {

constexpr double kTolerance = 1e-9;
constexpr std::size_t kCoverageRowLimit = 2'000'000;

}  // namespace

void LearnerConfig::validate() const {
  if (!(neg_sample > 0.0 && neg_sample <= 1.0)) throw Error("neg_sample must lie in (0, 1]");
  if (!(near_max_ratio > 0.0 && near_max_ratio <= 1.0)) throw Error("near_max_ratio must lie in (0, 1]");
  if (max_depth < 1) throw Error("max_depth must be at least 1");
  if (max_clause_len < 1) throw Error("max_clause_len must be at least 1");
  if (min_clause_accuracy < 0.0 || min_clause_accuracy > 1.0) throw Error("min_clause_accuracy must lie in [0, 1]");
}

const char* action_name(Action a) {
  switch (a) {
    case Action::NearMax:
      return "near-max";
    case Action::Determinates:
      return "determinates";
    case Action::BestGain:
      return "best-gain";
    case Action::Lookahead:
      return "lookahead";
    case Action::NewVarFallback:
      return "new-variable";
    case Action::Exhausted:
      return "exhausted";
  }
  return "?";
}

namespace {

bool introduces_variable(const Literal& lit, std::size_t width) {
  return std::any_of(lit.args.begin(), lit.args.end(), [&](const Term& t) { return t.is_var() && t.id >= width; });
}

/// True when some new column of `ext` differs from every older column.
bool adds_new_column(const BindingTable& ext, std::size_t old_width) {
  for (std::size_t c = old_width; c < ext.width(); ++c) {
    bool duplicate = false;
    for (std::size_t o = 0; o < old_width && !duplicate; ++o) {
      bool same = true;
      for (std::size_t r = 0; r < ext.size() && same; ++r) same = ext.row(r)[c] == ext.row(r)[o];
      duplicate = same;
    }
    if (!duplicate) return true;
  }
  return false;
}

Literal shift_new_variables(Literal lit, std::size_t from, std::size_t to) {
  for (auto& t : lit.args) {
    if (t.is_var() && t.id >= from) t.id = static_cast<VarId>(t.id - from + to);
  }
  return lit;
}

}  // namespace

Selection select_literals(BindingEngine& engine, const BindingTable& table, const std::vector<Literal>& candidates,
                          const LearnerConfig& cfg) {
  Selection sel;
  std::vector<Scored> scored;
  scored.reserve(candidates.size());
  for (const auto& lit : candidates) {
    GainStats s = engine.gain(table, lit);
    if (s.k == 0) continue;  // keeps no positive binding
    scored.push_back({lit, s});
  }
  if (scored.empty()) return sel;

  std::size_t best = 0;
  for (std::size_t i = 1; i < scored.size(); ++i) {
    if (scored[i].stats.gain > scored[best].stats.gain + kTolerance) best = i;
  }
  const GainStats& bs = scored[best].stats;
  for (const auto& s : scored) {
    if (s.stats.gain <= kTolerance && !s.stats.determinate && introduces_variable(s.literal, table.width())) {
      sel.stepping_stones.push_back(s);
    }
  }

  auto alternatives_without = [&](const std::vector<std::size_t>& taken) {
    std::vector<Scored> alts;
    for (std::size_t i = 0; i < scored.size(); ++i) {
      if (std::find(taken.begin(), taken.end(), i) != taken.end()) continue;
      if (scored[i].stats.gain > kTolerance) alts.push_back(scored[i]);
    }
    std::stable_sort(alts.begin(), alts.end(),
                     [](const Scored& a, const Scored& b) { return a.stats.gain > b.stats.gain + kTolerance; });
    return alts;
  };

  if (bs.gain > kTolerance && bs.gain + kTolerance >= cfg.near_max_ratio * bs.max_possible) {
    sel.action = Action::NearMax;
    sel.chosen.push_back(scored[best]);
    sel.alternatives = alternatives_without({best});
    return sel;
  }
  // Single-valued range: every binding already counts as positive, so only
  // binding the output without error finishes the clause.
  if (bs.max_possible <= kTolerance) {
    for (std::size_t i = 0; i < scored.size(); ++i) {
      if (!scored[i].stats.binds_output || scored[i].stats.m_minus > kTolerance) continue;
      sel.action = Action::NearMax;
      sel.chosen.push_back(scored[i]);
      return sel;
    }
  }

  std::vector<std::size_t> taken;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (sel.chosen.size() >= cfg.determinate_cap) break;
    if (!scored[i].stats.determinate) continue;
    const BindingTable ext = engine.extend(table, scored[i].literal);
    if (!adds_new_column(ext, table.width())) continue;
    sel.chosen.push_back(scored[i]);
    taken.push_back(i);
  }
  if (!sel.chosen.empty()) {
    sel.action = Action::Determinates;
    sel.alternatives = alternatives_without(taken);
    return sel;
  }

  if (bs.gain > kTolerance) {
    sel.action = Action::BestGain;
    sel.chosen.push_back(scored[best]);
    sel.alternatives = alternatives_without({best});
    return sel;
  }

  for (const auto& s : scored) {
    if (introduces_variable(s.literal, table.width())) {
      sel.action = Action::NewVarFallback;
      sel.chosen.push_back(s);
      return sel;
    }
  }
  return sel;
}

// ---------------------------------------------------------------------------

std::vector<Tuple> sample_negatives(const std::vector<Tuple>& negatives, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error("sampling fraction must lie in (0, 1]");
  const std::size_t n = negatives.size();
  const auto want = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  if (want >= n) return negatives;
  std::mt19937_64 rng(seed);
  std::vector<Tuple> out;
  out.reserve(want);
  std::size_t needed = want;
  for (std::size_t i = 0; i < n && needed > 0; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, n - i - 1);
    if (pick(rng) < needed) {
      out.push_back(negatives[i]);
      --needed;
    }
  }
  return out;
}

namespace {

// Selection sampling straight over the product space, for complements too
// large to materialize.
std::vector<Tuple> stream_sample_complement(const Relation& rel, const std::vector<TypeDef>& types, double fraction,
                                            std::uint64_t seed, std::uint64_t cap) {
  const std::uint64_t total = product_size(rel, types);
  const std::uint64_t n = total - rel.positives.size();
  const auto want = static_cast<std::uint64_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  if (want > cap) {
    throw Error("sampled complement of '" + rel.name + "' still needs " + std::to_string(want) +
                " tuples, over the cap; use FFOIL mode or a smaller sample");
  }
  std::mt19937_64 rng(seed);
  std::vector<Tuple> out;
  out.reserve(want);
  const std::size_t k = rel.arity();
  std::vector<std::size_t> idx(k, 0);
  Tuple t(k);
  std::uint64_t seen = 0, needed = want;
  while (needed > 0) {
    for (std::size_t i = 0; i < k; ++i) t[i] = types[rel.signature[i]].members[idx[i]];
    if (!rel.positives.contains(t)) {
      std::uniform_int_distribution<std::uint64_t> pick(0, n - seen - 1);
      if (pick(rng) < needed) {
        out.push_back(t);
        --needed;
      }
      ++seen;
    }
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < types[rel.signature[pos]].members.size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
  return out;
}

}  // namespace

std::vector<Tuple> training_negatives(const Dataset& ds, const LearnerConfig& cfg) {
  if (!ds.target.negatives.empty()) {
    return sample_negatives(ds.target.negatives.tuples(), cfg.neg_sample, cfg.seed);
  }
  const std::uint64_t total = product_size(ds.target, ds.types);
  if (total > cfg.complement_cap && cfg.neg_sample < 1.0) {
    for (TypeId t : ds.target.signature) {
      if (ds.type(t).ordered) throw Error("closed-world complement needs finite types");
    }
    return stream_sample_complement(ds.target, ds.types, cfg.neg_sample, cfg.seed, cfg.complement_cap);
  }
  return sample_negatives(closed_world_complement(ds.target, ds.types, cfg.complement_cap), cfg.neg_sample, cfg.seed);
}

// ---------------------------------------------------------------------------

std::vector<RecursionProfile> definition_profiles(const Definition& def, const Dataset& ds, bool functional_mode,
                                                  std::size_t skip) {
  std::vector<RecursionProfile> out;
  for (std::size_t i = 0; i < def.clauses.size(); ++i) {
    if (i == skip) continue;
    for (auto& p : recursion_profiles(def.clauses[i], ds, functional_mode)) out.push_back(std::move(p));
  }
  return out;
}

bool clause_well_formed(const Clause& clause, const Dataset& ds, bool functional_mode,
                        const std::vector<RecursionProfile>& context) {
  const VarId out = clause.output_var();
  std::vector<bool> known(clause.var_count(), false);
  for (VarId v = 0; v < clause.arity; ++v) known[v] = !(functional_mode && v == out);
  auto is_known = [&](const Term& t) { return !t.is_var() || known[t.id]; };
  std::size_t introduced = clause.arity;
  for (std::size_t i = 0; i < clause.body.size(); ++i) {
    const Literal& lit = clause.body[i];
    switch (lit.kind) {
      case LiteralKind::Relation: {
        if (lit.negated) {
          for (const auto& t : lit.args) {
            if (t.kind != Term::Kind::Anon && !is_known(t)) return false;
          }
          break;
        }
        const bool any_known = std::any_of(lit.args.begin(), lit.args.end(),
                                           [&](const Term& t) { return t.is_var() && known[t.id]; });
        if (!any_known) return false;
        if (lit.relation == clause.head) {
          Clause prefix = clause;
          prefix.body.resize(i);
          prefix.vars.resize(introduced);
          if (!recursion_guard(lit, prefix, ds, functional_mode, &context)) return false;
        }
        for (const auto& t : lit.args) {
          if (t.is_var()) known[t.id] = true;
        }
        break;
      }
      case LiteralKind::EqVar:
      case LiteralKind::EqConst: {
        const Term& a = lit.args[0];
        const Term& b = lit.args[1];
        if (is_known(a) && is_known(b)) break;
        if (lit.negated) return false;
        // Only the functional output may be bound by an equality.
        const bool binds_a = a.is_var() && a.id == out && functional_mode && !known[a.id] && is_known(b);
        const bool binds_b = b.is_var() && b.id == out && functional_mode && !known[b.id] && is_known(a);
        if (!binds_a && !binds_b) return false;
        known[out] = true;
        break;
      }
      case LiteralKind::CmpVar:
      case LiteralKind::CmpThreshold:
        for (const auto& t : lit.args) {
          if (!is_known(t)) return false;
        }
        break;
    }
    for (const auto& t : lit.args) {
      if (t.is_var()) introduced = std::max<std::size_t>(introduced, t.id + 1);
    }
  }
  return !functional_mode || known[out];
}

ClauseCoverage clause_coverage(BindingEngine& engine, const Clause& clause, const std::vector<Tuple>& positives,
                               const std::vector<Tuple>& negatives) {
  ClauseCoverage cov;
  const bool functional = engine.mode() == Mode::Ffoil;
  BindingTable table = functional ? engine.initial_table(positives) : engine.initial_table(positives, negatives);
  try {
    for (const auto& lit : clause.body) table = engine.extend(table, lit, kCoverageRowLimit);
  } catch (const RowLimitExceeded&) {
    cov.valid = false;
    return cov;
  } catch (const Error&) {
    cov.valid = false;
    return cov;
  }
  if (functional && !table.output_bound()) {
    cov.valid = false;
    return cov;
  }
  const std::size_t key_len = functional ? clause.arity - 1 : clause.arity;
  std::unordered_set<Tuple, TupleHash> pos, neg;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto row = table.row(i);
    Tuple key(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(key_len));
    (table.label(i) == Label::Pos ? pos : neg).insert(std::move(key));
  }
  for (const auto& t : positives) {
    Tuple key(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(key_len));
    if (pos.count(key) != 0) cov.positives.push_back(t);
  }
  cov.wrong = neg.size();
  return cov;
}

Clause prune_clause(BindingEngine& engine, const Clause& clause, const std::vector<Tuple>& positives,
                    const std::vector<Tuple>& negatives, const std::vector<RecursionProfile>& context) {
  const bool functional = engine.mode() == Mode::Ffoil;
  const ClauseCoverage base = clause_coverage(engine, clause, positives, negatives);
  Clause cur = clause;
  for (std::size_t i = cur.body.size(); i-- > 0;) {
    Clause cand = cur.without_literal(i);
    if (!clause_well_formed(cand, engine.dataset(), functional, context)) continue;
    const ClauseCoverage cov = clause_coverage(engine, cand, positives, negatives);
    if (!cov.valid) continue;
    if (cov.positives.size() >= base.positives.size() && cov.wrong <= base.wrong) cur = std::move(cand);
  }
  return cur;
}

Definition prune_definition(const Definition& def, const std::vector<Tuple>& positives, const Dataset& ds,
                            const EvalOptions& opts) {
  enum class Cov : std::uint8_t { No, Yes, Unknown };
  auto covered = [&](const Definition& d) {
    Evaluator ev(d, ds, opts);
    std::vector<Cov> out;
    out.reserve(positives.size());
    for (const auto& t : positives) {
      EvalResult detail;
      const bool ok = ev.holds(t, &detail);
      out.push_back(ok ? Cov::Yes : detail.budget_exhausted ? Cov::Unknown : Cov::No);
    }
    return out;
  };
  Definition cur = def;
  const std::vector<Cov> base = covered(def);
  // A budget-exhausted query says nothing about coverage, so it blocks removal.
  if (std::find(base.begin(), base.end(), Cov::Unknown) != base.end()) return cur;
  for (std::size_t i = 0; i < cur.clauses.size();) {
    Definition cand = cur;
    cand.clauses.erase(cand.clauses.begin() + static_cast<std::ptrdiff_t>(i));
    const std::vector<Cov> now = covered(cand);
    bool keeps = true;
    for (std::size_t j = 0; j < base.size() && keeps; ++j) keeps = base[j] != Cov::Yes || now[j] == Cov::Yes;
    if (keeps) {
      cur = std::move(cand);
    } else {
      ++i;
    }
  }
  return cur;
}

// ---------------------------------------------------------------------------

namespace {

bool table_complete(const BindingTable& t, bool functional) {
  if (t.count(Label::Neg) != 0) return false;
  if (functional) return t.output_bound() && t.count(Label::Pos) > 0;
  return t.count(Label::Pos) > 0;
}

}  // namespace

namespace detail {

GrowOutcome grow_clause(BindingEngine& engine, Clause clause, BindingTable table, const LearnerConfig& cfg,
                        std::size_t clause_index, const TraceSink& trace, const std::vector<RecursionProfile>& context) {
  const Dataset& ds = engine.dataset();
  const bool functional = engine.mode() == Mode::Ffoil;
  struct State {
    Clause clause;
    BindingTable table;
  };
  struct Checkpoint {
    State state;
    std::vector<Scored> alternatives;
    std::size_t next = 0;
  };
  std::deque<Checkpoint> checkpoints;
  State st{std::move(clause), std::move(table)};
  GrowOutcome out;
  out.peak_rows = st.table.size();

  auto emit = [&](const char* kind, Action action, std::vector<Literal> lits, const GainStats& stats) {
    if (!trace) return;
    TraceEvent ev;
    ev.clause = clause_index;
    ev.kind = kind;
    ev.action = action;
    ev.literals = std::move(lits);
    ev.stats = stats;
    ev.rows = st.table.size();
    ev.clause_text = render_clause(st.clause, *ds.symbols);
    if (st.table.size() <= 1000) ev.table_dump = dump_table(st.table, *ds.symbols);
    trace(ev);
  };
  auto apply = [&](const Literal& lit) {
    st.table = engine.extend(st.table, lit);
    st.clause.add_literal(lit, ds);
    out.peak_rows = std::max(out.peak_rows, st.table.size());
  };

  emit("start", Action::Exhausted, {}, GainStats{});
  while (true) {
    if (table_complete(st.table, functional)) break;
    Selection sel;
    if (st.clause.body.size() < cfg.max_clause_len) {
      EnumerationOptions eo;
      eo.max_depth = cfg.max_depth;
      eo.allow_negation = cfg.allow_negation;
      eo.functional_mode = functional;
      eo.output_bound = st.table.output_bound();
      eo.recursion_context = &context;
      sel = select_literals(engine, st.table, candidate_literals(st.clause, ds, eo), cfg);
      if (cfg.lookahead && st.clause.body.size() + 1 < cfg.max_clause_len &&
          (sel.action == Action::BestGain || sel.action == Action::NewVarFallback)) {
        const double single = sel.action == Action::BestGain ? sel.chosen.front().stats.gain : 0.0;
        double best = single + kTolerance;
        std::optional<Scored> pick;
        const std::size_t width = st.table.width();
        for (std::size_t i = 0; i < sel.stepping_stones.size() && i < cfg.lookahead_width; ++i) {
          const Scored& stone = sel.stepping_stones[i];
          BindingTable ext;
          try {
            ext = engine.extend(st.table, stone.literal, st.table.size());
          } catch (const RowLimitExceeded&) {
            continue;  // stones may not multiply rows
          }
          Clause next = st.clause;
          next.add_literal(stone.literal, ds);
          eo.output_bound = ext.output_bound();
          for (const auto& lit : candidate_literals(next, ds, eo)) {
            bool uses_new = false;
            for (const auto& t : lit.args) uses_new = uses_new || (t.is_var() && t.id >= width);
            if (!uses_new) continue;
            const GainStats g = engine.gain(ext, lit);
            if (g.k > 0 && g.gain > best && g.gain + kTolerance >= cfg.near_max_ratio * g.max_possible) {
              best = g.gain;
              pick = stone;
            }
          }
        }
        if (pick) {
          sel.action = Action::Lookahead;
          sel.chosen = {*pick};
        }
      }
    }
    if (sel.action != Action::Exhausted) {
      if (!sel.alternatives.empty() && cfg.backtrack_checkpoints > 0) {
        checkpoints.push_back(Checkpoint{st, std::move(sel.alternatives), 0});
        if (checkpoints.size() > cfg.backtrack_checkpoints) {
          auto weakest = std::min_element(checkpoints.begin(), checkpoints.end(), [](const auto& a, const auto& b) {
            return a.alternatives[a.next].stats.gain < b.alternatives[b.next].stats.gain;
          });
          checkpoints.erase(weakest);
        }
      }
      if (sel.action == Action::Determinates) {
        const std::size_t width = st.table.width();
        std::vector<Literal> applied;
        for (const auto& s : sel.chosen) {
          const Literal lit = shift_new_variables(s.literal, width, st.table.width());
          const BindingTable ext = engine.extend(st.table, lit);
          if (!adds_new_column(ext, st.table.width())) continue;
          st.table = ext;
          st.clause.add_literal(lit, ds);
          out.peak_rows = std::max(out.peak_rows, st.table.size());
          applied.push_back(lit);
        }
        emit("step", sel.action, applied, sel.chosen.front().stats);
      } else {
        apply(sel.chosen.front().literal);
        emit("step", sel.action, {sel.chosen.front().literal}, sel.chosen.front().stats);
      }
      continue;
    }
    // Impasse: resume the most recent checkpoint at its next alternative.
    while (!checkpoints.empty() && checkpoints.back().next >= checkpoints.back().alternatives.size()) {
      checkpoints.pop_back();
    }
    if (checkpoints.empty() || out.backtracks >= cfg.max_backtracks) break;
    Checkpoint& cp = checkpoints.back();
    const Scored alt = cp.alternatives[cp.next++];
    st = cp.state;
    if (cp.next >= cp.alternatives.size()) checkpoints.pop_back();
    ++out.backtracks;
    apply(alt.literal);
    emit("backtrack", Action::BestGain, {alt.literal}, alt.stats);
  }
  out.complete = table_complete(st.table, functional);
  out.clause = std::move(st.clause);
  out.table = std::move(st.table);
  return out;
}

}  // namespace detail

namespace {

void emit_clause_event(const TraceSink& trace, const char* kind, std::size_t index, const Clause& c,
                       const SymbolTable& symbols) {
  if (!trace) return;
  TraceEvent ev;
  ev.clause = index;
  ev.kind = kind;
  ev.clause_text = render_clause(c, symbols);
  trace(ev);
}

}  // namespace

LearnResult learn_foil(const Dataset& ds, const LearnerConfig& cfg, const TraceSink& trace) {
  cfg.validate();
  LearnResult result;
  const std::vector<Tuple> negatives = training_negatives(ds, cfg);
  const std::vector<Tuple>& positives = ds.target.positives.tuples();
  result.positives = positives.size();
  result.negatives = negatives.size();
  result.initial_rows = positives.size() + negatives.size();
  result.peak_rows = result.initial_rows;

  BindingEngine engine(ds, Mode::Foil);
  Definition def;
  def.target = ds.target.name;
  def.arity = ds.target.arity();
  std::vector<Tuple> remaining = positives;

  while (!remaining.empty()) {
    const std::size_t index = def.clauses.size();
    const auto context = definition_profiles(def, ds, false);
    auto grown = detail::grow_clause(engine, Clause::most_general(ds.target), engine.initial_table(remaining, negatives),
                                     cfg, index, trace, context);
    result.peak_rows = std::max(result.peak_rows, grown.peak_rows);
    result.backtracks += grown.backtracks;
    const Clause clause = prune_clause(engine, grown.clause, remaining, negatives, context);
    emit_clause_event(trace, "prune", index, clause, *ds.symbols);
    const ClauseCoverage cov = clause_coverage(engine, clause, remaining, negatives);
    if (!cov.valid || cov.positives.empty()) {
      result.notes.push_back("clause search found no clause covering a remaining tuple");
      break;
    }
    if (!grown.complete) {
      const double precision = static_cast<double>(cov.positives.size()) /
                               static_cast<double>(cov.positives.size() + cov.wrong);
      if (precision + kTolerance < cfg.min_clause_accuracy) {
        result.notes.push_back("best incomplete clause fell below the accuracy floor");
        break;
      }
      result.notes.push_back("accepted an incomplete clause");
    }
    emit_clause_event(trace, "clause", index, clause, *ds.symbols);
    def.clauses.push_back(clause);
    std::unordered_set<Tuple, TupleHash> done(cov.positives.begin(), cov.positives.end());
    std::erase_if(remaining, [&](const Tuple& t) { return done.count(t) != 0; });
  }

  EvalOptions eo;
  eo.budget = cfg.eval_budget;
  def = prune_definition(def, positives, ds, eo);
  result.definition = def;
  result.before_simplification = def;
  result.uncovered = remaining;
  result.complete = remaining.empty();
  return result;
}

LearnResult learn(const Dataset& ds, const LearnerConfig& cfg, const TraceSink& trace) {
  return cfg.mode == Mode::Ffoil ? learn_ffoil(ds, cfg, trace) : learn_foil(ds, cfg, trace);
}

}  // namespace ffoil
