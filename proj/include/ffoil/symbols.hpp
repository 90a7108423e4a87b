#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ffoil {

/// Interned constant. Two constants are equal iff their ids are equal.
using ConstId = std::uint32_t;

/// The undetermined output value of a functional-mode binding. It is never
/// handed out by a SymbolTable, so it can never be a member of a type.
inline constexpr ConstId kUndetermined = 0xFFFFFFFFu;

using Tuple = std::vector<ConstId>;

struct TupleHash {
  std::size_t operator()(std::span<const ConstId> values) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ull ^ values.size();
    for (ConstId v : values) {
      h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
  std::size_t operator()(const Tuple& t) const noexcept {
    return (*this)(std::span<const ConstId>(t));
  }
};

class SymbolTable {
 public:
  ConstId intern(std::string_view symbol);
  std::optional<ConstId> find(std::string_view symbol) const;
  const std::string& name(ConstId id) const;
  std::size_t size() const { return names_.size(); }

  /// Value of the symbol read as a number, when it is one.
  std::optional<double> numeric(ConstId id) const;

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> names_;
  std::vector<std::optional<double>> numbers_;
  std::unordered_map<std::string, ConstId, StringHash, std::equal_to<>> ids_;
};

/// Insertion-ordered set of tuples. Iteration order is the order in which
/// tuples were first inserted, which keeps every downstream run deterministic.
class TupleSet {
 public:
  TupleSet() = default;
  explicit TupleSet(std::vector<Tuple> tuples);

  bool insert(Tuple t);
  bool contains(std::span<const ConstId> t) const;
  bool erase(const Tuple& t);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<Tuple>& tuples() const { return items_; }
  const Tuple& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool operator==(const TupleSet& other) const { return items_ == other.items_; }

 private:
  struct SpanEq {
    using is_transparent = void;
    bool operator()(std::span<const ConstId> a, std::span<const ConstId> b) const {
      return std::equal(a.begin(), a.end(), b.begin(), b.end());
    }
  };
  struct SpanHash {
    using is_transparent = void;
    std::size_t operator()(std::span<const ConstId> v) const noexcept { return TupleHash{}(v); }
    std::size_t operator()(const Tuple& v) const noexcept { return TupleHash{}(v); }
  };

  std::vector<Tuple> items_;
  std::unordered_set<Tuple, SpanHash, SpanEq> index_;
};

}  // namespace ffoil
