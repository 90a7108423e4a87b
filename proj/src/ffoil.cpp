#include <algorithm>
#include <unordered_set>

#include "ffoil/learner.hpp"
#include "grow.hpp"

namespace ffoil {

CoverageLedger coverage_ledger(const Definition& def, const std::vector<Tuple>& tuples, const Dataset& ds,
                               const EvalOptions& opts) {
  CoverageLedger ledger;
  Evaluator ev(def, ds, opts);
  for (const auto& t : tuples) {
    const auto got = ev.answer_standard_query(std::span<const ConstId>(t).first(t.size() - 1));
    Status s = Status::Uncovered;
    if (got) s = *got == t.back() ? Status::Correct : Status::Wrong;
    ledger.status.push_back(s);
    switch (s) {
      case Status::Correct:
        ++ledger.correct;
        break;
      case Status::Wrong:
        ++ledger.wrong;
        break;
      case Status::Uncovered:
        ++ledger.uncovered;
        break;
    }
  }
  return ledger;
}

Definition add_default_clause(const Definition& def, const Dataset& ds) {
  const auto c = most_common_output(ds.target, ds.type(ds.target.signature.back()));
  if (!c) return def;
  Definition out = def;
  Clause clause = Clause::most_general(ds.target);
  clause.body.push_back(Literal::eq_const(clause.output_var(), *c));
  out.default_clause = std::move(clause);
  out.ordered = true;
  return out;
}

Definition global_simplify(const Definition& def, const Dataset& ds, const EvalOptions& opts, const TraceSink& trace) {
  const std::vector<Tuple>& tuples = ds.target.positives.tuples();
  Definition cur = def;
  std::size_t errors = coverage_ledger(cur, tuples, ds, opts).errors();
  auto note = [&](const char* what) {
    if (!trace) return;
    TraceEvent ev;
    ev.kind = "simplify";
    ev.clause_text = std::string(what) + " -> " + std::to_string(errors) + " errors";
    trace(ev);
  };
  for (int round = 0; round < 3; ++round) {
    bool changed = false;
    for (std::size_t ci = 0; ci < cur.clauses.size(); ++ci) {
      for (std::size_t li = cur.clauses[ci].body.size(); li-- > 0;) {
        Clause shorter = cur.clauses[ci].without_literal(li);
        if (!clause_well_formed(shorter, ds, true, definition_profiles(cur, ds, true, ci))) continue;
        Definition cand = cur;
        cand.clauses[ci] = std::move(shorter);
        const std::size_t e = coverage_ledger(cand, tuples, ds, opts).errors();
        if (e <= errors) {
          cur = std::move(cand);
          errors = e;
          changed = true;
          note("removed literal");
        }
      }
    }
    for (std::size_t ci = 0; ci < cur.clauses.size();) {
      Definition cand = cur;
      cand.clauses.erase(cand.clauses.begin() + static_cast<std::ptrdiff_t>(ci));
      const std::size_t e = coverage_ledger(cand, tuples, ds, opts).errors();
      if (e <= errors) {
        cur = std::move(cand);
        errors = e;
        changed = true;
        note("removed clause");
      } else {
        ++ci;
      }
    }
    if (!changed) break;
  }
  return cur;
}

LearnResult learn_ffoil(const Dataset& ds, const LearnerConfig& cfg, const TraceSink& trace) {
  cfg.validate();
  const FunctionalReport report = check_functional(ds.target);
  if (!report.functional) throw Error("target not functional: '" + ds.target.name + "'");

  LearnResult result;
  const std::vector<Tuple>& positives = ds.target.positives.tuples();
  result.positives = positives.size();
  result.initial_rows = positives.size();
  result.peak_rows = positives.size();

  BindingEngine engine(ds, Mode::Ffoil);
  Definition def;
  def.target = ds.target.name;
  def.arity = ds.target.arity();
  def.ordered = true;
  std::vector<Tuple> remaining = positives;
  const std::size_t in_len = ds.target.arity() - 1;
  auto inputs = [&](const Tuple& t) { return Tuple(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(in_len)); };

  while (!remaining.empty()) {
    const std::size_t index = def.clauses.size();
    Clause start = Clause::most_general(ds.target);
    start.cut = true;
    const auto context = definition_profiles(def, ds, true);
    auto grown = detail::grow_clause(engine, start, engine.initial_table(remaining), cfg, index, trace, context);
    result.peak_rows = std::max(result.peak_rows, grown.peak_rows);
    result.backtracks += grown.backtracks;
    Clause clause = prune_clause(engine, grown.clause, remaining, {}, context);
    clause.cut = true;
    const ClauseCoverage cov = clause_coverage(engine, clause, remaining, {});
    if (!cov.valid || cov.positives.empty()) {
      result.notes.push_back("clause search found no clause covering a remaining tuple");
      break;
    }
    if (!grown.complete) {
      const double precision =
          static_cast<double>(cov.positives.size()) / static_cast<double>(cov.positives.size() + cov.wrong);
      if (precision + 1e-9 < cfg.min_clause_accuracy) {
        result.notes.push_back("best incomplete clause fell below the accuracy floor");
        break;
      }
      result.notes.push_back("accepted an incomplete clause");
    }
    if (trace) {
      TraceEvent ev;
      ev.clause = index;
      ev.kind = "clause";
      ev.clause_text = render_clause(clause, *ds.symbols);
      trace(ev);
    }
    def.clauses.push_back(clause);

    // Every input this clause answers is decided, rightly or not.
    BindingTable table = engine.initial_table(remaining);
    for (const auto& lit : clause.body) table = engine.extend(table, lit);
    std::unordered_set<Tuple, TupleHash> decided;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto row = table.row(i);
      decided.emplace(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(in_len));
    }
    std::erase_if(remaining, [&](const Tuple& t) { return decided.count(inputs(t)) != 0; });
  }

  EvalOptions eo;
  eo.budget = cfg.eval_budget;
  result.before_simplification = def;
  const CoverageLedger ledger = coverage_ledger(def, positives, ds, eo);
  for (std::size_t i = 0; i < positives.size(); ++i) {
    if (ledger.status[i] == Status::Uncovered) result.uncovered.push_back(positives[i]);
  }
  result.errors_before_simplification = ledger.errors();
  result.errors_after_simplification = ledger.errors();
  if (ledger.uncovered > 0) {
    def = global_simplify(def, ds, eo, trace);
    result.simplified = true;
    result.errors_after_simplification = coverage_ledger(def, positives, ds, eo).errors();
  }
  result.complete = ledger.errors() == 0;
  result.definition = add_default_clause(def, ds);
  return result;
}

}  // namespace ffoil
