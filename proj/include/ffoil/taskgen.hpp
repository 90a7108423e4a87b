#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffoil/dataset.hpp"

namespace ffoil {

inline constexpr std::size_t kMaxVocabulary = 100'000;

/// Task names accepted by gen_task, in roster order.
const std::vector<std::string>& task_names();

struct TaskSpec {
  std::string task;
  // Unset fields take the task's default (see task_defaults).
  std::optional<int> alphabet;
  std::optional<int> max_len;
  std::optional<bool> repeats;
  std::optional<int> int_lo;
  std::optional<int> int_hi;
  // noisy-fn
  std::size_t n_inputs = 200;
  std::size_t n_outputs = 5;
  std::size_t rule_depth = 2;
  double noise_rate = 0.10;
  std::uint64_t seed = 0;

  /// Copy with every optional filled in; throws Error on unknown task or
  /// out-of-range parameters.
  TaskSpec resolved() const;
};

struct GeneratedTask {
  Dataset dataset;
  /// Comment lines written above the dataset (hidden rules, roster).
  std::vector<std::string> header;

  std::string text() const;
};

/// Lists over {1..alphabet} of length at most max_len, shortest first and
/// lexicographic within a length, e.g. "[]", "[1]", "[1,2]".
std::vector<std::string> list_vocabulary(int alphabet, int max_len, bool repeats);

/// The same lists interned as a type named `list` with `[]` as a theory constant.
TypeDef gen_list_vocabulary(SymbolTable& symbols, int alphabet, int max_len, bool repeats);

GeneratedTask gen_task(const TaskSpec& spec);

/// Entities with a few boolean features; the output is chosen by hidden
/// ordered rules of `rule_depth` feature tests with default o0, then a
/// `noise_rate` fraction of outputs is replaced by another value.
GeneratedTask gen_noisy_functional(std::size_t n_inputs, std::size_t n_outputs, std::size_t rule_depth,
                                   double noise_rate, std::uint64_t seed);

/// Tasks open_domain_tuples accepts.
bool has_open_domain_oracle(const std::string& task);

/// `n` random target tuples for a list task over lists of length up to
/// `max_len` (beyond the training vocabulary), constants interned in
/// `symbols`. Sorting tasks draw distinct elements from 1..max(alphabet, max_len).
std::vector<Tuple> open_domain_tuples(const TaskSpec& spec, std::size_t n, int max_len, std::uint64_t seed,
                                      SymbolTable& symbols);

}  // namespace ffoil
