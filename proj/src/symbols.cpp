#include "ffoil/symbols.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace ffoil {

namespace {

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

ConstId SymbolTable::intern(std::string_view symbol) {
  if (auto it = ids_.find(symbol); it != ids_.end()) return it->second;
  if (names_.size() >= kUndetermined) throw std::length_error("symbol table exhausted");
  const auto id = static_cast<ConstId>(names_.size());
  names_.emplace_back(symbol);
  numbers_.push_back(parse_number(symbol));
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<ConstId> SymbolTable::find(std::string_view symbol) const {
  if (auto it = ids_.find(symbol); it != ids_.end()) return it->second;
  return std::nullopt;
}

const std::string& SymbolTable::name(ConstId id) const {
  static const std::string undetermined = "_";
  if (id == kUndetermined) return undetermined;
  return names_.at(id);
}

std::optional<double> SymbolTable::numeric(ConstId id) const {
  if (id >= numbers_.size()) return std::nullopt;
  return numbers_[id];
}

TupleSet::TupleSet(std::vector<Tuple> tuples) {
  items_.reserve(tuples.size());
  for (auto& t : tuples) insert(std::move(t));
}

bool TupleSet::insert(Tuple t) {
  if (index_.count(t) != 0) return false;
  index_.insert(t);
  items_.push_back(std::move(t));
  return true;
}

bool TupleSet::contains(std::span<const ConstId> t) const { return index_.find(t) != index_.end(); }

bool TupleSet::erase(const Tuple& t) {
  if (index_.erase(t) == 0) return false;
  items_.erase(std::find(items_.begin(), items_.end(), t));
  return true;
}

}  // namespace ffoil
