#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffoil/dataset.hpp"
#include "ffoil/hypothesis.hpp"

namespace ffoil {

struct EvalOptions {
  std::uint64_t budget = 1'000'000;  // goals
  std::size_t max_call_depth = 1000;
  bool cuts = true;
  /// Answer components/member/append/last/dec/succ/plus/lt procedurally over
  /// unbounded lists and naturals instead of from their extensional tuples.
  bool intensional = false;
};

struct Query {
  std::string relation;
  std::vector<std::optional<ConstId>> args;  // nullopt = free

  bool standard() const;
  static Query standard_query(std::string relation, std::span<const ConstId> inputs);
};

/// Parses `rel(c1,...,X)`. Capitalized or `_` arguments are free.
Query parse_query(std::string_view text, SymbolTable& symbols);

struct EvalResult {
  std::vector<Tuple> answers;  // full argument tuples, in discovery order
  std::uint64_t goal_count = 0;
  bool budget_exhausted = false;
  std::optional<std::string> error;
};

/// Relations answered procedurally in intensional mode.
bool is_builtin_relation(std::string_view name);

/// Depth-first, left-to-right resolution of a learned definition against the
/// dataset's background relations, with cut and negation as failure.
class Evaluator {
 public:
  Evaluator(const Definition& def, const Dataset& ds, EvalOptions options = {});
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  /// All answers (or only the first when `first_only`) within the budget.
  EvalResult solve(const Query& q, bool first_only = false);

  /// Output of the first answer to R(inputs..., X)?
  std::optional<ConstId> answer_standard_query(std::span<const ConstId> inputs, EvalResult* detail = nullptr);

  /// Whether the ground tuple succeeds.
  bool holds(std::span<const ConstId> tuple, EvalResult* detail = nullptr);

 private:
  class Machine;
  std::unique_ptr<Machine> machine_;
  std::string target_;
};

EvalResult solve(const Query& q, const Definition& def, const Dataset& ds, EvalOptions options = {});
std::optional<ConstId> answer_standard_query(const Definition& def, std::span<const ConstId> inputs, const Dataset& ds,
                                             EvalOptions options = {});

struct Verdict {
  Tuple tuple;
  std::optional<ConstId> got;
  bool correct = false;
  bool budget_exhausted = false;
};

struct ScoreResult {
  double accuracy = 0.0;
  std::size_t correct = 0;
  std::vector<Verdict> verdicts;
};

ScoreResult score(const Definition& def, const std::vector<Tuple>& tests, const Dataset& ds, EvalOptions options = {});

/// Ground check for definitions that cannot answer standard queries outside
/// a finite vocabulary: a tuple counts as correct when it holds and the same
/// inputs paired with a different output (the next test output that differs)
/// do not. `got` records the wrong output when it was accepted.
ScoreResult score_ground(const Definition& def, const std::vector<Tuple>& tests, const Dataset& ds,
                         EvalOptions options = {});

}  // namespace ffoil
