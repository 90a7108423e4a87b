#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffoil/dataset.hpp"

namespace ffoil {

using VarId = std::uint32_t;

struct Term {
  enum class Kind : std::uint8_t { Var, Const, Anon };
  Kind kind = Kind::Var;
  std::uint32_t id = 0;  // VarId or ConstId

  static Term var(VarId v) { return {Kind::Var, v}; }
  static Term constant(ConstId c) { return {Kind::Const, c}; }
  static Term anon() { return {Kind::Anon, 0}; }
  bool is_var() const { return kind == Kind::Var; }

  bool operator==(const Term&) const = default;
};

enum class LiteralKind : std::uint8_t { Relation, EqVar, EqConst, CmpVar, CmpThreshold };
enum class CmpOp : std::uint8_t { LessEq, Greater };

/// One body literal of the clause language:
///   Q(X1..Xk) / not(Q(..)), Xi = Xj / Xi \= Xj, Xi = c / Xi \= c,
///   Xi =< Xj / Xi > Xj, Xi =< t / Xi > t.
/// Equality and comparison operands are stored in `args`.
struct Literal {
  LiteralKind kind = LiteralKind::Relation;
  bool negated = false;
  std::string relation;
  std::vector<Term> args;
  CmpOp op = CmpOp::LessEq;
  double threshold = 0.0;

  static Literal rel(std::string name, std::vector<Term> args, bool negated = false);
  static Literal eq_var(VarId a, VarId b, bool negated = false);
  static Literal eq_const(VarId v, ConstId c, bool negated = false);
  static Literal cmp_var(VarId a, VarId b, CmpOp op);
  static Literal cmp_threshold(VarId v, double t, CmpOp op);

  /// Distinct variables in argument order.
  std::vector<VarId> variables() const;
  bool mentions(VarId v) const;

  bool operator==(const Literal&) const = default;
};

struct VarInfo {
  TypeId type = kNoType;
  int depth = 0;
};

struct Clause {
  std::string head;
  std::size_t arity = 0;
  std::vector<VarInfo> vars;  // vars[0..arity) are the head variables
  std::vector<Literal> body;
  bool cut = false;

  /// `R(A,B,...) :-` with distinct fresh head variables.
  static Clause most_general(const Relation& target);

  std::size_t var_count() const { return vars.size(); }
  VarId output_var() const { return static_cast<VarId>(arity - 1); }

  /// Variables of `lit` not yet in the clause, in first-appearance order.
  std::vector<VarId> new_variables(const Literal& lit) const;

  /// Appends `lit`, registering the variables it introduces with the types
  /// of their argument positions and depth 1 + the deepest old variable.
  void add_literal(const Literal& lit, const Dataset& ds);

  /// Removes body literal `i` and renumbers variables so indices stay dense.
  /// Variables that only `i` mentioned disappear.
  Clause without_literal(std::size_t i) const;
};

struct Definition {
  std::string target;
  std::size_t arity = 0;
  std::vector<Clause> clauses;
  bool ordered = false;
  std::optional<Clause> default_clause;

  bool empty() const { return clauses.empty() && !default_clause; }
  std::size_t literal_count() const;
  /// Clauses in execution order, default clause last.
  std::vector<const Clause*> all_clauses() const;
};

/// Display name of variable `v`: A..Z, then A1..Z1, ...
std::string variable_name(VarId v);

/// Body literals that rendering folds into the clause head (positive
/// equalities between head variables or of a head variable to a constant).
/// Executing them is head unification.
std::vector<bool> head_folded_literals(const Clause& clause);

/// Prolog text, one clause per line.
std::string render_prolog(const Definition& def, const SymbolTable& symbols);
std::string render_clause(const Clause& clause, const SymbolTable& symbols, bool is_default = false);
std::string render_literal(const Literal& lit, const SymbolTable& symbols);

/// Reads the rendered Prolog subset back. Constants are interned in `symbols`.
/// A head repeating a variable or holding a constant is normalized into
/// body equalities; a final cut-free clause of an ordered definition becomes
/// its default clause.
Definition parse_prolog_definition(std::string_view text, SymbolTable& symbols);

/// How a recursive literal's argument compares with the head variable at the
/// same position, by chains of order-declared literals already in the body.
enum class ArgOrder : std::uint8_t { Less, LessEq, Unknown };
using RecursionProfile = std::vector<ArgOrder>;

/// Profile of a target literal against the head of `clause`. In functional
/// mode only input positions are compared.
RecursionProfile recursion_profile(const Literal& lit, const Clause& clause, const Dataset& ds, bool functional_mode);

/// Profiles of the target literals in a clause body, each against its prefix.
std::vector<RecursionProfile> recursion_profiles(const Clause& clause, const Dataset& ds, bool functional_mode);

/// True when some order of argument positions makes every profile a strict
/// lexicographic decrease, so the recursive calls together terminate.
bool lexicographic_decrease(const std::vector<RecursionProfile>& profiles);

/// Recursive-literal admissibility: `lit` (on the target relation) must carry,
/// at some argument position, a variable shown smaller than the head variable
/// at that position by a chain of order-declared background literals already
/// in the body (at least one link strict), and together with the clause's
/// other recursive literals and `context` (profiles from the rest of the
/// definition) admit one lexicographic order. In functional mode only input
/// positions count and every input argument must already be bound.
bool recursion_guard(const Literal& lit, const Clause& clause, const Dataset& ds, bool functional_mode,
                     const std::vector<RecursionProfile>* context = nullptr);

struct EnumerationOptions {
  int max_depth = 4;
  bool allow_negation = true;
  bool functional_mode = false;
  /// Functional mode: whether the output variable has been bound yet.
  /// An unbound output is not a known variable; literals may bind it.
  bool output_bound = true;
  /// Candidate thresholds per variable for comparison literals on ordered
  /// types; when absent, midpoints between consecutive type members are used.
  const std::vector<std::vector<double>>* thresholds = nullptr;
  /// Recursion profiles of the definition's other clauses.
  const std::vector<RecursionProfile>* recursion_context = nullptr;
};

/// Visits every candidate literal for specializing `clause`, in the fixed
/// enumeration order: equalities, inequalities, comparisons, then relation
/// literals by relation (backgrounds in declaration order, target last) and
/// argument pattern. Stops early when `visit` returns false.
void enumerate_candidate_literals(const Clause& clause, const Dataset& ds, const EnumerationOptions& opts,
                                  const std::function<bool(const Literal&)>& visit);

std::vector<Literal> candidate_literals(const Clause& clause, const Dataset& ds, const EnumerationOptions& opts);

}  // namespace ffoil
