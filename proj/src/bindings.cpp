#include "ffoil/bindings.hpp"

#include <cmath>
#include <sstream>

namespace ffoil {

char label_char(Label l) {
  switch (l) {
    case Label::Pos:
      return '+';
    case Label::Neg:
      return '-';
    case Label::Undet:
      return 'o';
  }
  return '?';
}

double information(double n_plus, double n_minus) {
  if (n_plus <= 0) throw Error("information() needs at least one positive binding");
  return -std::log2(n_plus / (n_plus + n_minus));
}

BindingTable::BindingTable(std::size_t width, Mode mode, std::size_t range_size)
    : width_(width), mode_(mode), range_size_(range_size) {}

void BindingTable::add_row(std::span<const ConstId> values, Label label) {
  if (values.size() != width_) throw Error("binding row width mismatch");
  cells_.insert(cells_.end(), values.begin(), values.end());
  labels_.push_back(label);
}

std::size_t BindingTable::count(Label l) const { return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), l)); }

EffectiveCounts effective_counts(const BindingTable& table) {
  const auto pos = static_cast<double>(table.count(Label::Pos));
  const auto neg = static_cast<double>(table.count(Label::Neg));
  if (table.mode() == Mode::Foil) return {pos, neg};
  const auto undet = static_cast<double>(table.count(Label::Undet));
  const double r = table.range_size() == 0 ? 1.0 : static_cast<double>(table.range_size());
  return {pos + undet, neg + (r - 1.0) * undet};
}

std::string dump_table(const BindingTable& table, const SymbolTable& symbols) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto row = table.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << symbols.name(row[j]);
    }
    out << ' ' << label_char(table.label(i)) << '\n';
  }
  return out.str();
}

const std::vector<std::uint32_t>& RelationIndex::lookup(std::uint32_t mask, const Tuple& key) {
  const auto& tuples = rel_->positives.tuples();
  if (mask == 0) {
    if (all_.size() != tuples.size()) {
      all_.resize(tuples.size());
      for (std::uint32_t i = 0; i < all_.size(); ++i) all_[i] = i;
    }
    return all_;
  }
  auto [it, fresh] = by_mask_.try_emplace(mask);
  Bucket& bucket = it->second;
  if (fresh) {
    Tuple k;
    for (std::uint32_t id = 0; id < tuples.size(); ++id) {
      k.clear();
      for (std::size_t p = 0; p < rel_->arity(); ++p) {
        if (mask & (1u << p)) k.push_back(tuples[id][p]);
      }
      bucket[k].push_back(id);
    }
  }
  auto found = bucket.find(key);
  return found == bucket.end() ? none_ : found->second;
}

BindingEngine::BindingEngine(const Dataset& ds, Mode mode) : ds_(&ds), mode_(mode) {
  if (mode == Mode::Ffoil) {
    const FunctionalReport report = check_functional(ds.target);
    if (!report.functional) throw Error("target not functional: '" + ds.target.name + "'");
    range_size_ = report.range_size;
    for (const auto& t : ds.target.positives) function_.emplace(Tuple(t.begin(), t.end() - 1), t.back());
  }
}

BindingTable BindingEngine::initial_table(const std::vector<Tuple>& positives, const std::vector<Tuple>& negatives) const {
  BindingTable table(ds_->target.arity(), Mode::Foil);
  for (const auto& t : positives) table.add_row(t, Label::Pos);
  for (const auto& t : negatives) table.add_row(t, Label::Neg);
  return table;
}

BindingTable BindingEngine::initial_table(const std::vector<Tuple>& remaining) const {
  BindingTable table(ds_->target.arity(), Mode::Ffoil, range_size_);
  table.set_output_bound(false);
  Tuple row;
  for (const auto& t : remaining) {
    row.assign(t.begin(), t.end());
    row.back() = kUndetermined;
    table.add_row(row, Label::Undet);
  }
  return table;
}

const ConstId* BindingEngine::expected_output(std::span<const ConstId> inputs) const {
  auto it = function_.find(Tuple(inputs.begin(), inputs.end()));
  return it == function_.end() ? nullptr : &it->second;
}

RelationIndex& BindingEngine::index_for(const std::string& name) {
  auto it = indexes_.find(name);
  if (it != indexes_.end()) return *it->second;
  const Relation* rel = ds_->find_relation(name);
  if (rel == nullptr) throw Error("unknown relation '" + name + "'");
  return *indexes_.emplace(name, std::make_unique<RelationIndex>(*rel)).first->second;
}

namespace {

bool compare(const SymbolTable& symbols, ConstId a, double b, CmpOp op) {
  const auto x = symbols.numeric(a);
  if (!x) return false;
  return op == CmpOp::LessEq ? *x <= b : *x > b;
}

}  // namespace

template <typename Visit>
void BindingEngine::for_each_child(const BindingTable& table, const Literal& lit, Visit&& visit) {
  const std::size_t n = table.width();
  const bool out_free = table.mode() == Mode::Ffoil && !table.output_bound();
  const VarId out = static_cast<VarId>(ds_->target.arity() - 1);
  auto is_free = [&](const Term& t) { return t.is_var() && (t.id >= n || (out_free && t.id == out)); };

  std::size_t new_count = 0;
  for (const auto& t : lit.args) {
    if (t.is_var() && t.id >= n) new_count = std::max<std::size_t>(new_count, t.id - n + 1);
  }
  std::vector<ConstId> fresh(new_count, kUndetermined);

  if (lit.kind == LiteralKind::Relation && !lit.negated) {
    RelationIndex& index = index_for(lit.relation);
    const Relation& rel = index.relation();
    if (rel.arity() != lit.args.size()) throw Error("arity mismatch in literal on '" + lit.relation + "'");
    std::uint32_t mask = 0;
    std::vector<std::size_t> bound_pos;
    // For each free position: the first position holding the same variable.
    std::vector<std::size_t> first_pos(lit.args.size());
    for (std::size_t p = 0; p < lit.args.size(); ++p) {
      const Term& t = lit.args[p];
      if (t.kind == Term::Kind::Anon) continue;
      if (!is_free(t)) {
        mask |= 1u << p;
        bound_pos.push_back(p);
        continue;
      }
      first_pos[p] = p;
      for (std::size_t q = 0; q < p; ++q) {
        if (lit.args[q] == t) {
          first_pos[p] = q;
          break;
        }
      }
    }
    Tuple key(bound_pos.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto row = table.row(i);
      for (std::size_t j = 0; j < bound_pos.size(); ++j) {
        const Term& t = lit.args[bound_pos[j]];
        key[j] = t.kind == Term::Kind::Const ? t.id : row[t.id];
      }
      for (std::uint32_t id : index.lookup(mask, key)) {
        const Tuple& tup = rel.positives[id];
        bool ok = true;
        ConstId out_value = kUndetermined;
        for (std::size_t p = 0; p < lit.args.size() && ok; ++p) {
          const Term& t = lit.args[p];
          if (t.kind == Term::Kind::Anon || !is_free(t)) continue;
          if (first_pos[p] != p) {
            ok = tup[p] == tup[first_pos[p]];
            continue;
          }
          if (t.id >= n) fresh[t.id - n] = tup[p];
          else out_value = tup[p];
        }
        if (ok) visit(i, std::span<const ConstId>(fresh), out_value);
      }
    }
    return;
  }

  if (lit.kind == LiteralKind::Relation) {
    RelationIndex& index = index_for(lit.relation);
    std::uint32_t mask = 0;
    std::vector<std::size_t> bound_pos;
    for (std::size_t p = 0; p < lit.args.size(); ++p) {
      const Term& t = lit.args[p];
      if (t.kind == Term::Kind::Anon) continue;
      if (is_free(t)) throw Error("negated literal with an unbound variable");
      mask |= 1u << p;
      bound_pos.push_back(p);
    }
    Tuple key(bound_pos.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto row = table.row(i);
      for (std::size_t j = 0; j < bound_pos.size(); ++j) {
        const Term& t = lit.args[bound_pos[j]];
        key[j] = t.kind == Term::Kind::Const ? t.id : row[t.id];
      }
      if (index.lookup(mask, key).empty()) visit(i, std::span<const ConstId>(fresh), kUndetermined);
    }
    return;
  }

  for (const auto& t : lit.args) {
    if (t.is_var() && t.id >= n) throw Error("comparison or equality introduces a new variable");
  }
  const SymbolTable& symbols = *ds_->symbols;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto row = table.row(i);
    ConstId out_value = kUndetermined;
    bool ok = false;
    switch (lit.kind) {
      case LiteralKind::EqVar: {
        const VarId a = lit.args[0].id, b = lit.args[1].id;
        if (out_free && (a == out || b == out)) {
          if (lit.negated || a == b) throw Error("output variable cannot be bound by this literal");
          out_value = row[a == out ? b : a];
          ok = true;
        } else {
          ok = (row[a] == row[b]) != lit.negated;
        }
        break;
      }
      case LiteralKind::EqConst: {
        const VarId v = lit.args[0].id;
        const ConstId c = lit.args[1].id;
        if (out_free && v == out) {
          if (lit.negated) throw Error("output variable cannot be bound by a negated literal");
          out_value = c;
          ok = true;
        } else {
          ok = (row[v] == c) != lit.negated;
        }
        break;
      }
      case LiteralKind::CmpVar: {
        if (is_free(lit.args[0]) || is_free(lit.args[1])) throw Error("comparison on an unbound variable");
        const auto y = symbols.numeric(row[lit.args[1].id]);
        ok = y && compare(symbols, row[lit.args[0].id], *y, lit.op);
        break;
      }
      case LiteralKind::CmpThreshold:
        if (is_free(lit.args[0])) throw Error("comparison on an unbound variable");
        ok = compare(symbols, row[lit.args[0].id], lit.threshold, lit.op);
        break;
      case LiteralKind::Relation:
        break;
    }
    if (ok) visit(i, std::span<const ConstId>(fresh), out_value);
  }
}

BindingTable BindingEngine::extend(const BindingTable& table, const Literal& lit, std::size_t row_limit) {
  std::size_t new_count = 0;
  for (const auto& t : lit.args) {
    if (t.is_var() && t.id >= table.width()) new_count = std::max<std::size_t>(new_count, t.id - table.width() + 1);
  }
  const std::size_t out = ds_->target.arity() - 1;
  BindingTable result(table.width() + new_count, table.mode(), table.range_size());
  result.set_output_bound(table.output_bound());
  bool bound_now = false;
  Tuple values;
  for_each_child(table, lit, [&](std::size_t i, std::span<const ConstId> fresh, ConstId out_value) {
    const auto row = table.row(i);
    values.assign(row.begin(), row.end());
    values.insert(values.end(), fresh.begin(), fresh.end());
    Label label = table.label(i);
    if (out_value != kUndetermined) {
      values[out] = out_value;
      const ConstId* expected = expected_output(row.first(out));
      label = expected != nullptr && *expected == out_value ? Label::Pos : Label::Neg;
      bound_now = true;
    }
    if (result.size() >= row_limit) throw RowLimitExceeded("binding table exceeds " + std::to_string(row_limit) + " rows");
    result.add_row(values, label);
  });
  if (table.mode() == Mode::Ffoil && !table.output_bound()) {
    // An unbound output stays unbound only if the literal never mentions it.
    if (bound_now || lit.mentions(static_cast<VarId>(out))) result.set_output_bound(true);
  }
  return result;
}

GainStats BindingEngine::gain(const BindingTable& table, const Literal& lit) {
  GainStats s;
  const EffectiveCounts before = effective_counts(table);
  s.n_plus = before.plus;
  s.n_minus = before.minus;
  s.max_possible = s.n_plus > 0 ? s.n_plus * information(s.n_plus, s.n_minus) : 0.0;
  const double r = table.range_size() == 0 ? 1.0 : static_cast<double>(table.range_size());
  const std::size_t out = ds_->target.arity() - 1;

  bool has_new = false;
  for (const auto& t : lit.args) has_new = has_new || (t.is_var() && t.id >= table.width());
  const bool out_free = table.mode() == Mode::Ffoil && !table.output_bound();
  s.binds_output = out_free && lit.mentions(static_cast<VarId>(out));

  std::vector<std::uint32_t> children(table.size(), 0);
  std::vector<bool> kept_plus(table.size(), false);
  for_each_child(table, lit, [&](std::size_t i, std::span<const ConstId>, ConstId out_value) {
    ++children[i];
    ++s.rows_after;
    Label label = table.label(i);
    if (out_value != kUndetermined) {
      const ConstId* expected = expected_output(table.row(i).first(out));
      label = expected != nullptr && *expected == out_value ? Label::Pos : Label::Neg;
    }
    switch (label) {
      case Label::Pos:
        s.m_plus += 1;
        kept_plus[i] = true;
        break;
      case Label::Neg:
        s.m_minus += 1;
        break;
      case Label::Undet:
        s.m_plus += 1;
        s.m_minus += r - 1.0;
        kept_plus[i] = true;
        break;
    }
  });

  // Binding the output classifies rows, so it is never a free determinate step.
  s.determinate = has_new && !s.binds_output;
  if (s.binds_output) {
    s.ambiguous_output = std::any_of(children.begin(), children.end(), [](std::uint32_t c) { return c > 1; });
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    const bool counts_plus = table.label(i) != Label::Neg;
    if (counts_plus && kept_plus[i]) ++s.k;
    if (counts_plus ? children[i] != 1 : children[i] > 1) s.determinate = false;
  }
  if (s.ambiguous_output) s.k = 0;
  if (s.k > 0 && s.m_plus > 0 && s.n_plus > 0) {
    s.gain = static_cast<double>(s.k) * (information(s.n_plus, s.n_minus) - information(s.m_plus, s.m_minus));
  }
  return s;
}

bool BindingEngine::is_determinate(const BindingTable& table, const Literal& lit) { return gain(table, lit).determinate; }

}  // namespace ffoil
