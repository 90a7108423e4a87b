#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ffoil/bindings.hpp"
#include "ffoil/dataset.hpp"
#include "ffoil/evaluator.hpp"
#include "ffoil/hypothesis.hpp"

namespace ffoil {

struct LearnerConfig {
  Mode mode = Mode::Foil;
  int max_depth = 4;
  double near_max_ratio = 0.80;
  double neg_sample = 1.0;
  std::uint64_t seed = 0;
  bool allow_negation = true;
  std::size_t max_clause_len = 20;
  std::size_t backtrack_checkpoints = 3;
  std::size_t determinate_cap = 10;
  /// Restarts from checkpoints allowed while growing one clause.
  std::size_t max_backtracks = 10;
  /// A clause that cannot be completed is kept only if at least this fraction
  /// of the training tuples it covers is covered correctly.
  double min_clause_accuracy = 0.80;
  std::uint64_t complement_cap = kDefaultComplementCap;
  std::uint64_t eval_budget = 1'000'000;
  /// A zero-gain literal that adds a variable without adding rows is taken
  /// ahead of the best-gain literal when it enables a near-maximum-gain
  /// literal that beats it.
  bool lookahead = true;
  std::size_t lookahead_width = 40;

  void validate() const;
};

enum class Action : std::uint8_t { NearMax, Determinates, BestGain, Lookahead, NewVarFallback, Exhausted };

const char* action_name(Action a);

struct Scored {
  Literal literal;
  GainStats stats;
};

struct Selection {
  Action action = Action::Exhausted;
  std::vector<Scored> chosen;
  /// Other gainful candidates, best first; used as backtracking alternatives.
  std::vector<Scored> alternatives;
  /// Zero-gain literals that keep a positive binding and add a variable.
  std::vector<Scored> stepping_stones;
};

/// Scores every candidate and applies the selection policy in order: near
/// maximum gain, determinate literals, best gain, first new-variable literal.
Selection select_literals(BindingEngine& engine, const BindingTable& table, const std::vector<Literal>& candidates,
                          const LearnerConfig& cfg);

struct TraceEvent {
  std::size_t clause = 0;
  std::string kind;  // "start", "step", "backtrack", "clause", "prune", "simplify"
  Action action = Action::Exhausted;
  std::vector<Literal> literals;
  GainStats stats;
  std::size_t rows = 0;
  std::string clause_text;
  std::string table_dump;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct LearnResult {
  Definition definition;
  /// Functional mode: the ordered clauses before global simplification.
  Definition before_simplification;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t peak_rows = 0;
  std::size_t initial_rows = 0;
  std::vector<Tuple> uncovered;  // training positives no learned clause covers
  bool complete = false;
  bool simplified = false;
  std::size_t errors_before_simplification = 0;
  std::size_t errors_after_simplification = 0;
  std::size_t backtracks = 0;
  std::vector<std::string> notes;
};

LearnResult learn(const Dataset& ds, const LearnerConfig& cfg, const TraceSink& trace = {});
LearnResult learn_foil(const Dataset& ds, const LearnerConfig& cfg, const TraceSink& trace = {});
LearnResult learn_ffoil(const Dataset& ds, const LearnerConfig& cfg, const TraceSink& trace = {});

/// Uniform sample of ceil(fraction * n) tuples without replacement, in the
/// original order; deterministic for a fixed seed.
std::vector<Tuple> sample_negatives(const std::vector<Tuple>& negatives, double fraction, std::uint64_t seed);

/// Negatives for FOIL mode: explicit ones, else the (possibly sampled)
/// closed-world complement.
std::vector<Tuple> training_negatives(const Dataset& ds, const LearnerConfig& cfg);

struct ClauseCoverage {
  std::vector<Tuple> positives;  // covered correctly (head tuples / inputs)
  std::size_t wrong = 0;         // negatives covered (FOIL) or wrong answers (functional)
  bool valid = true;             // literal ordering still admissible; output bound
};

ClauseCoverage clause_coverage(BindingEngine& engine, const Clause& clause, const std::vector<Tuple>& positives,
                               const std::vector<Tuple>& negatives);

/// Drops body literals, last-added first, while coverage of `positives` does
/// not shrink and coverage of `negatives` (or wrong answers) does not grow.
Clause prune_clause(BindingEngine& engine, const Clause& clause, const std::vector<Tuple>& positives,
                    const std::vector<Tuple>& negatives, const std::vector<RecursionProfile>& context = {});

/// Drops clauses, in learned order, whose removal leaves every positive the
/// definition covered still covered.
Definition prune_definition(const Definition& def, const std::vector<Tuple>& positives, const Dataset& ds,
                            const EvalOptions& opts = {});

enum class Status : std::uint8_t { Correct, Wrong, Uncovered };

struct CoverageLedger {
  std::vector<Status> status;
  std::size_t correct = 0, wrong = 0, uncovered = 0;
  std::size_t errors() const { return wrong + uncovered; }
};

/// Standard-query outcome for each training tuple under ordered semantics.
CoverageLedger coverage_ledger(const Definition& def, const std::vector<Tuple>& tuples, const Dataset& ds,
                               const EvalOptions& opts = {});

/// Appends R(X1..Xn-1, c) for the most common output c, unless every output
/// value occurs once.
Definition add_default_clause(const Definition& def, const Dataset& ds);

/// Generalizes an ordered definition by removing literals and then clauses
/// while total training errors do not increase.
Definition global_simplify(const Definition& def, const Dataset& ds, const EvalOptions& opts = {},
                           const TraceSink& trace = {});

/// Whether each body literal respects the known-variable rule of its prefix
/// and each recursive literal passes the recursion guard, given the recursion
/// profiles of the definition's other clauses.
bool clause_well_formed(const Clause& clause, const Dataset& ds, bool functional_mode,
                        const std::vector<RecursionProfile>& context = {});

/// Recursion profiles of every clause except `skip`.
std::vector<RecursionProfile> definition_profiles(const Definition& def, const Dataset& ds, bool functional_mode,
                                                  std::size_t skip = static_cast<std::size_t>(-1));

}  // namespace ffoil
