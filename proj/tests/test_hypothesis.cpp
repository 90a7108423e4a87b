#include <algorithm>
#include <set>

#include "common.hpp"
#include "doctest.h"

using namespace ffoil;

namespace {

Clause plus_clause(const Dataset& ds, const std::vector<Literal>& body) {
  Clause c = Clause::most_general(ds.target);
  for (const auto& l : body) c.add_literal(l, ds);
  return c;
}

Literal rel(const char* name, std::initializer_list<VarId> vs) {
  std::vector<Term> args;
  for (VarId v : vs) args.push_back(Term::var(v));
  return Literal::rel(name, args);
}

// Independent generator for the plus language: every argument vector over
// old variables, canonically numbered new variables and (when negated) the
// anonymous term, filtered by the stated admissibility rules.
std::set<std::string> brute_force(const Clause& clause, const Dataset& ds, const EnumerationOptions& o) {
  const auto& st = *ds.symbols;
  const VarId n = static_cast<VarId>(clause.var_count());
  const VarId out = clause.output_var();
  const bool out_free = o.functional_mode && !o.output_bound;
  auto known = [&](VarId v) { return !(out_free && v == out); };
  std::set<std::string> got;
  auto add = [&](const Literal& l) {
    if (std::find(clause.body.begin(), clause.body.end(), l) == clause.body.end()) got.insert(render_literal(l, st));
  };
  const ConstId zero = fixture::c(ds, "0");
  for (VarId v = 0; v < n; ++v) {
    add(Literal::eq_const(v, zero));
    if (o.allow_negation && known(v)) add(Literal::eq_const(v, zero, true));
    for (VarId w = v + 1; w < n; ++w) {
      if (known(v) || known(w)) add(Literal::eq_var(v, w));
      if (o.allow_negation && known(v) && known(w)) add(Literal::eq_var(v, w, true));
    }
  }
  for (const Relation* r : {&ds.backgrounds[0], &ds.target}) {
    for (bool neg : {false, true}) {
      if (neg && (!o.allow_negation || r == &ds.target)) continue;
      const std::size_t k = r->arity();
      const std::size_t alphabet = n + k + 1;  // old vars, k new slots, anon
      std::vector<std::size_t> digits(k, 0);
      for (;;) {
        std::vector<Term> args;
        bool ok = true, any_known = false, any_new = false;
        VarId next_new = n;
        int depth = 0;
        for (std::size_t d : digits) {
          if (d < n) {
            if (!known(static_cast<VarId>(d)) && neg) ok = false;
            if (known(static_cast<VarId>(d))) any_known = true;
            depth = std::max(depth, clause.vars[d].depth);
            args.push_back(Term::var(static_cast<VarId>(d)));
          } else if (d < n + k) {
            if (neg) ok = false;
            const VarId v = static_cast<VarId>(d);
            if (v > next_new) ok = false;
            if (v == next_new) ++next_new;
            any_new = true;
            args.push_back(Term::var(v));
          } else {
            if (!neg) ok = false;
            any_new = true;
            args.push_back(Term::anon());
          }
        }
        if (ok && any_known && (!any_new || depth + 1 <= o.max_depth)) {
          const Literal lit = Literal::rel(r->name, args, neg);
          if (r != &ds.target || recursion_guard(lit, clause, ds, o.functional_mode)) add(lit);
        }
        std::size_t i = 0;
        while (i < k && ++digits[i] == alphabet) digits[i++] = 0;
        if (i == k) break;
      }
    }
  }
  return got;
}

}  // namespace

TEST_CASE("folded rendering of the two plus definitions") {
  Dataset ds = fixture::plus();
  const Definition foil = fixture::parse_def(fixture::kFoilPlus, ds);
  CHECK(render_prolog(foil, *ds.symbols) == fixture::kFoilPlus);
  const Definition ffoil = fixture::parse_def(fixture::kFfoilPlus, ds);
  CHECK(ffoil.ordered);
  CHECK(ffoil.clauses.size() == 2);
  CHECK(ffoil.default_clause.has_value());
  CHECK(render_prolog(ffoil, *ds.symbols) == fixture::kFfoilPlus);
  CHECK(render_prolog(Definition{}, *ds.symbols).empty());

  // Body equalities fold into the head when built by hand.
  Clause c = plus_clause(ds, {Literal::eq_const(0, fixture::c(ds, "0")), Literal::eq_var(1, 2)});
  CHECK(render_clause(c, *ds.symbols) == "plus(0,B,B).");
}

TEST_CASE("parsing normalizes heads and rejects disjunction") {
  Dataset ds = parse_dataset("type t: a, b\ntarget f(t, t)\na, a\n.\n");
  const Definition d = fixture::parse_def("f(A,A).\n", ds);
  REQUIRE(d.clauses.size() == 1);
  REQUIRE(d.clauses[0].body.size() == 1);
  CHECK(d.clauses[0].body[0] == Literal::eq_var(0, 1));
  CHECK(d.clauses[0].vars.size() == 2);
  try {
    fixture::parse_def("f(A,B) :- A=B ; B=a.\n", ds);
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("disjunctive goals unsupported") != std::string::npos);
  }
}

TEST_CASE("gcd listing keeps order, cuts and default absence") {
  Dataset ds = fixture::task("gcd");
  const Definition d = fixture::parse_def(fixture::kFfoilGcd, ds);
  CHECK(d.ordered);
  CHECK(d.clauses.size() == 3);
  CHECK_FALSE(d.default_clause.has_value());
  for (const auto& c : d.clauses) CHECK(c.cut);
  CHECK(render_prolog(d, *ds.symbols) == fixture::kFfoilGcd);
}

TEST_CASE("render parse render is a fixpoint") {
  Dataset ds = fixture::task("append");
  const char* texts[] = {
      "append([],B,B).\nappend(A,B,C) :- components(A,D,E), append(E,B,F), components(C,D,F).\n",
      "append(A,B,C) :- A=[], B\\=[], not(components(B,_,_)), C=B, !.\nappend(A,B,[]).\n",
  };
  for (const char* t : texts) {
    const std::string once = render_prolog(fixture::parse_def(t, ds), *ds.symbols);
    CHECK(render_prolog(fixture::parse_def(once, ds), *ds.symbols) == once);
  }
}

TEST_CASE("plus enumeration starts with the equality forms") {
  const Dataset ds = fixture::plus();
  const Clause c = plus_clause(ds, {});
  std::vector<std::string> text;
  for (const auto& l : candidate_literals(c, ds, {})) text.push_back(render_literal(l, *ds.symbols));
  const std::vector<std::string> head = {"A=0", "B=0", "C=0", "A=B", "A=C", "B=C"};
  REQUIRE(text.size() > head.size());
  CHECK(std::vector<std::string>(text.begin(), text.begin() + 6) == head);
  for (const char* want : {"dec(A,D)", "dec(D,A)", "dec(B,D)"}) {
    CHECK(std::find(text.begin(), text.end(), want) != text.end());
  }
  EnumerationOptions pure;
  pure.allow_negation = false;
  for (const auto& l : candidate_literals(c, ds, pure)) CHECK_FALSE(l.negated);
}

TEST_CASE("plus enumeration matches a brute-force generator") {
  const Dataset ds = fixture::plus();
  const std::vector<Clause> clauses = {
      plus_clause(ds, {}),
      plus_clause(ds, {Literal::eq_const(0, fixture::c(ds, "0"))}),
      plus_clause(ds, {rel("dec", {0, 3})}),
      plus_clause(ds, {rel("dec", {0, 3}), rel("dec", {2, 4})}),
      plus_clause(ds, {rel("dec", {0, 3}), rel("dec", {3, 4})}),
  };
  for (const Clause& c : clauses) {
    for (int depth : {1, 2, 4}) {
      for (bool neg : {true, false}) {
        for (int mode = 0; mode < 3; ++mode) {
          EnumerationOptions o;
          o.max_depth = depth;
          o.allow_negation = neg;
          o.functional_mode = mode > 0;
          o.output_bound = mode != 1;
          const auto list = candidate_literals(c, ds, o);
          std::set<std::string> seen;
          for (const auto& l : list) seen.insert(render_literal(l, *ds.symbols));
          CHECK(seen.size() == list.size());
          CHECK(seen == brute_force(c, ds, o));
        }
      }
    }
  }
}

TEST_CASE("enumeration on ordered types adds comparisons only for known variables") {
  Dataset ds = parse_dataset("type n: ordered\ntype t: a, b\ntarget f(t, n)\na, 1\nb, 2\n.\n");
  const Clause c = Clause::most_general(ds.target);
  std::size_t cmp = 0;
  for (const auto& l : candidate_literals(c, ds, {})) cmp += l.kind == LiteralKind::CmpThreshold;
  CHECK(cmp == 2);
  EnumerationOptions free_out;
  free_out.functional_mode = true;
  free_out.output_bound = false;
  for (const auto& l : candidate_literals(c, ds, free_out)) CHECK(l.kind != LiteralKind::CmpThreshold);
}

TEST_CASE("recursion guard") {
  const Dataset ds = fixture::plus();
  const Clause c = plus_clause(ds, {rel("dec", {0, 3}), rel("dec", {2, 4})});
  CHECK(recursion_guard(rel("plus", {1, 3, 4}), c, ds, false));
  CHECK_FALSE(recursion_guard(rel("plus", {0, 1, 2}), c, ds, false));
  CHECK_FALSE(recursion_guard(rel("plus", {0, 1, 2}), plus_clause(ds, {}), ds, false));

  const Dataset app = fixture::task("append");
  Clause a = Clause::most_general(app.target);
  a.add_literal(rel("components", {0, 3, 4}), app);
  CHECK(recursion_guard(Literal::rel("append", {Term::var(4), Term::var(1), Term::var(5)}), a, app, false));
  CHECK_FALSE(recursion_guard(Literal::rel("append", {Term::var(3), Term::var(1), Term::var(5)}), a, app, false));
}

TEST_CASE("lexicographic decrease over profiles") {
  using A = ArgOrder;
  CHECK(lexicographic_decrease({{A::Less, A::Unknown}}));
  CHECK(lexicographic_decrease({{A::Less, A::Unknown}, {A::LessEq, A::Less}}));
  CHECK_FALSE(lexicographic_decrease({{A::Less, A::Unknown}, {A::Unknown, A::Less}}));
  CHECK_FALSE(lexicographic_decrease({{A::LessEq, A::LessEq}}));
}
