#pragma once

#include "ffoil/learner.hpp"

namespace ffoil::detail {

struct GrowOutcome {
  Clause clause;
  BindingTable table;
  bool complete = false;
  std::size_t backtracks = 0;
  std::size_t peak_rows = 0;
};

GrowOutcome grow_clause(BindingEngine& engine, Clause clause, BindingTable table, const LearnerConfig& cfg,
                        std::size_t clause_index, const TraceSink& trace,
                        const std::vector<RecursionProfile>& context = {});

}  // namespace ffoil::detail
