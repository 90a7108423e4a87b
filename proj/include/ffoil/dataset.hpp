#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ffoil/symbols.hpp"

namespace ffoil {

using TypeId = std::size_t;
inline constexpr TypeId kNoType = static_cast<TypeId>(-1);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct TypeDef {
  std::string name;
  std::vector<ConstId> members;  // declaration order
  std::vector<ConstId> theory_constants;
  /// Numeric types carry a total order and admit comparison literals.
  bool ordered = false;

  bool contains(ConstId c) const { return rank_.count(c) != 0; }
  bool is_theory_constant(ConstId c) const;
  /// Declaration rank of a member; used for deterministic tie-breaking.
  std::size_t rank(ConstId c) const { return rank_.at(c); }
  bool add_member(ConstId c);

 private:
  std::unordered_map<ConstId, std::size_t> rank_;
};

struct Relation {
  std::string name;
  std::vector<TypeId> signature;
  TupleSet positives;
  TupleSet negatives;  // explicit negatives; empty means closed world / functional mode

  std::size_t arity() const { return signature.size(); }
};

/// `order <rel> <smaller> < <larger>`: in every tuple of `relation`, the value
/// at position `smaller` precedes the value at position `larger` in a
/// well-order. Non-strict declarations use `=<`.
struct OrderDecl {
  std::string relation;
  std::size_t smaller = 0;  // 0-based
  std::size_t larger = 0;
  bool strict = true;

  bool operator==(const OrderDecl&) const = default;
};

struct Dataset {
  std::shared_ptr<SymbolTable> symbols = std::make_shared<SymbolTable>();
  std::vector<TypeDef> types;
  Relation target;
  std::vector<Relation> backgrounds;
  std::vector<OrderDecl> orders;
  std::optional<TupleSet> test_tuples;

  const TypeDef& type(TypeId id) const { return types.at(id); }
  std::optional<TypeId> find_type(std::string_view name) const;
  /// Background relation by name; the target is not included.
  const Relation* find_background(std::string_view name) const;
  /// Target or background relation by name.
  const Relation* find_relation(std::string_view name) const;
  const std::string& symbol(ConstId c) const { return symbols->name(c); }
};

/// Parses the line-oriented dataset format. Throws ParseError with the
/// offending line and column.
Dataset parse_dataset(std::string_view text);
Dataset load_dataset(const std::string& path);

/// Renders a dataset in the same format; parse(render(ds)) reproduces ds.
std::string render_dataset(const Dataset& ds);

/// Renders a constant so that the dataset tokenizer reads it back as one token.
std::string quote_constant(const std::string& symbol);

inline constexpr std::uint64_t kDefaultComplementCap = 10'000'000;

/// Tuples of the cartesian product of the relation's types that are not
/// positives. Requires finite (unordered) types and no explicit negatives.
std::vector<Tuple> closed_world_complement(const Relation& rel, const std::vector<TypeDef>& types,
                                           std::uint64_t cap = kDefaultComplementCap);

/// Size of the cartesian product of the relation's signature types.
std::uint64_t product_size(const Relation& rel, const std::vector<TypeDef>& types);

struct FunctionalReport {
  bool functional = true;
  std::size_t range_size = 0;
  std::vector<Tuple> violations;  // input prefixes with two or more outputs
};

FunctionalReport check_functional(const Relation& rel);

/// Most frequent output value among the positives. Empty when every value
/// occurs exactly once. Ties go to the earliest-declared member of `output_type`.
std::optional<ConstId> most_common_output(const Relation& rel, const TypeDef& output_type);

}  // namespace ffoil
