#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ffoil/dataset.hpp"
#include "ffoil/hypothesis.hpp"

namespace ffoil {

enum class Mode : std::uint8_t { Foil, Ffoil };
enum class Label : std::uint8_t { Pos, Neg, Undet };

class RowLimitExceeded : public Error {
 public:
  using Error::Error;
};
char label_char(Label l);

/// -log2(n_plus / (n_plus + n_minus)). Throws when n_plus is zero.
double information(double n_plus, double n_minus);

/// Rows are value sequences, one slot per clause variable. In functional mode
/// the output slot of an unbound table holds kUndetermined.
class BindingTable {
 public:
  BindingTable() = default;
  BindingTable(std::size_t width, Mode mode, std::size_t range_size = 0);

  std::size_t width() const { return width_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  Mode mode() const { return mode_; }
  std::size_t range_size() const { return range_size_; }
  bool output_bound() const { return output_bound_; }
  void set_output_bound(bool b) { output_bound_ = b; }

  std::span<const ConstId> row(std::size_t i) const { return {cells_.data() + i * width_, width_}; }
  Label label(std::size_t i) const { return labels_[i]; }
  void add_row(std::span<const ConstId> values, Label label);

  std::size_t count(Label l) const;

 private:
  std::size_t width_ = 0;
  Mode mode_ = Mode::Foil;
  std::size_t range_size_ = 0;
  bool output_bound_ = true;
  std::vector<ConstId> cells_;
  std::vector<Label> labels_;
};

struct EffectiveCounts {
  double plus = 0;
  double minus = 0;
};

/// Raw label counts in FOIL mode. In functional mode each undetermined row
/// counts once as positive and r-1 times as negative.
EffectiveCounts effective_counts(const BindingTable& table);

struct GainStats {
  double n_plus = 0, n_minus = 0;
  double m_plus = 0, m_minus = 0;
  std::size_t k = 0;
  double gain = 0;
  double max_possible = 0;
  std::size_t rows_after = 0;
  bool determinate = false;
  bool binds_output = false;
  /// Binds the output to more than one value for some binding; such a
  /// literal keeps no binding (k = 0) since a clause answers with one value.
  bool ambiguous_output = false;
};

/// Dump format: one row per line, slots comma-separated, then a space and the
/// label character (+, -, o). Undetermined slots print as `_`.
std::string dump_table(const BindingTable& table, const SymbolTable& symbols);

/// Hash index over a relation's positive tuples keyed by the values at a set
/// of bound positions.
class RelationIndex {
 public:
  explicit RelationIndex(const Relation& rel) : rel_(&rel) {}
  /// Tuple ids whose values at `mask` positions equal `key` (in position order).
  const std::vector<std::uint32_t>& lookup(std::uint32_t mask, const Tuple& key);
  const Relation& relation() const { return *rel_; }

 private:
  using Bucket = std::unordered_map<Tuple, std::vector<std::uint32_t>, TupleHash>;
  const Relation* rel_;
  std::map<std::uint32_t, Bucket> by_mask_;
  std::vector<std::uint32_t> all_;
  std::vector<std::uint32_t> none_;
};

/// Table construction, extension, gain and determinacy for one dataset.
/// Positive relation literals are joined against positive tuples of the
/// background relations and of the target itself.
class BindingEngine {
 public:
  BindingEngine(const Dataset& ds, Mode mode);

  const Dataset& dataset() const { return *ds_; }
  Mode mode() const { return mode_; }

  /// FOIL: remaining positives labelled + and negatives labelled -.
  BindingTable initial_table(const std::vector<Tuple>& positives, const std::vector<Tuple>& negatives) const;
  /// Functional mode: one undetermined row per remaining positive.
  BindingTable initial_table(const std::vector<Tuple>& remaining) const;

  /// Throws RowLimitExceeded when the result would exceed `row_limit` rows.
  BindingTable extend(const BindingTable& table, const Literal& lit, std::size_t row_limit = SIZE_MAX);
  GainStats gain(const BindingTable& table, const Literal& lit);
  bool is_determinate(const BindingTable& table, const Literal& lit);

  /// Correct output for an input prefix, if the prefix is a training input.
  const ConstId* expected_output(std::span<const ConstId> inputs) const;

 private:
  template <typename Visit>
  void for_each_child(const BindingTable& table, const Literal& lit, Visit&& visit);
  RelationIndex& index_for(const std::string& name);

  const Dataset* ds_;
  Mode mode_;
  std::size_t range_size_ = 0;
  std::unordered_map<Tuple, ConstId, TupleHash> function_;
  std::map<std::string, std::unique_ptr<RelationIndex>, std::less<>> indexes_;
};

}  // namespace ffoil
