#include "common.hpp"
#include "doctest.h"

using namespace ffoil;

TEST_CASE("plus(1,1,X) under both definitions") {
  Dataset ds = fixture::plus();
  const Definition ff = fixture::parse_def(fixture::kFfoilPlus, ds);
  const Definition fo = fixture::parse_def(fixture::kFoilPlus, ds);
  const Query q = parse_query("plus(1,1,X)", *ds.symbols);
  CHECK(q.standard());
  const EvalResult a = solve(q, ff, ds);
  const EvalResult b = solve(q, fo, ds);
  REQUIRE(a.answers.size() >= 1);
  REQUIRE(b.answers.size() == 1);
  CHECK(a.answers[0] == fixture::tup(ds, {"1", "1", "2"}));
  CHECK(b.answers[0] == fixture::tup(ds, {"1", "1", "2"}));
  CHECK(a.goal_count <= 15);
  CHECK(a.goal_count < b.goal_count);
  CHECK(b.goal_count >= 5 * a.goal_count);
}

TEST_CASE("goal counting convention on a hand-traced query") {
  Dataset ds = fixture::plus();
  // plus(0,0,X): head unifies with the fact, no body literal is attempted.
  const Definition base = fixture::parse_def("plus(0,B,B).\n", ds);
  const EvalResult r = solve(parse_query("plus(0,0,X)", *ds.symbols), base, ds);
  REQUIRE(r.answers.size() == 1);
  CHECK(r.answers[0].back() == fixture::c(ds, "0"));
  CHECK(r.goal_count == 0);

  // One body literal: the first attempt succeeds, the retry for a second answer fails.
  const Definition one = fixture::parse_def("plus(A,B,C) :- dec(A,C).\n", ds);
  const EvalResult r1 = solve(parse_query("plus(2,0,X)", *ds.symbols), one, ds);
  REQUIRE(r1.answers.size() == 1);
  CHECK(r1.goal_count == 2);
  CHECK(solve(parse_query("plus(2,0,X)", *ds.symbols), one, ds).goal_count == 2);
}

TEST_CASE("standard queries") {
  Dataset gcd = fixture::task("gcd");
  const Definition g = fixture::parse_def(fixture::kFfoilGcd, gcd);
  const Tuple in = fixture::tup(gcd, {"12", "8"});
  CHECK(answer_standard_query(g, in, gcd) == fixture::c(gcd, "4"));

  Dataset ds = fixture::plus();
  const Definition ff = fixture::parse_def(fixture::kFfoilPlus, ds);
  CHECK(answer_standard_query(ff, fixture::tup(ds, {"2", "2"}), ds) == fixture::c(ds, "2"));
  CHECK(answer_standard_query(ff, fixture::tup(ds, {"2", "1"}), ds) == fixture::c(ds, "2"));

  const ScoreResult s = score(ff, ds.target.positives.tuples(), ds);
  CHECK(s.accuracy == 1.0);
  const ScoreResult e = score(Definition{"plus", 3}, ds.target.positives.tuples(), ds);
  CHECK(e.accuracy == 0.0);
  for (const auto& v : e.verdicts) CHECK_FALSE(v.got.has_value());
}

TEST_CASE("cut commits to the first clause") {
  Dataset ds = parse_dataset("type t: *a, *b\ntarget f(t, t)\na, a\nb, b\n.\n");
  const Definition cut = fixture::parse_def("f(A,a) :- !.\nf(A,b).\n", ds);
  const Definition nocut = fixture::parse_def("f(A,a).\nf(A,b).\n", ds);
  const Query q = parse_query("f(a,X)", *ds.symbols);
  CHECK(solve(q, cut, ds).answers.size() == 1);
  CHECK(solve(q, nocut, ds).answers.size() == 2);
  // The cut also discards remaining choices of body literals to its left.
  Dataset d2 = parse_dataset("type t: *a, *b\ntarget g(t, t)\na, a\n.\nbackground p(t)\na\nb\n.\n");
  const Query q2 = parse_query("g(a,X)", *d2.symbols);
  CHECK(solve(q2, fixture::parse_def("g(A,B) :- p(B), !.\n", d2), d2).answers.size() == 1);
  CHECK(solve(q2, fixture::parse_def("g(A,B) :- p(B).\n", d2), d2).answers.size() == 2);
}

TEST_CASE("negation needs ground arguments and budgets are flagged") {
  Dataset ds = fixture::plus();
  const Definition loop = fixture::parse_def("plus(A,B,C) :- plus(A,B,C).\n", ds);
  EvalOptions o;
  o.budget = 50;
  o.max_call_depth = 1'000'000;
  const EvalResult r = solve(parse_query("plus(1,1,X)", *ds.symbols), loop, ds, o);
  CHECK(r.budget_exhausted);
  CHECK(r.answers.empty());

  const Definition open = fixture::parse_def("plus(A,B,C) :- not(dec(C,A)).\n", ds);
  const EvalResult e = solve(parse_query("plus(1,1,X)", *ds.symbols), open, ds);
  CHECK(e.error.has_value());
}

TEST_CASE("ground scoring for open-domain lists") {
  Dataset ds = fixture::task("append");
  const Definition d = fixture::parse_def(
      "append([],B,B).\nappend(A,B,C) :- components(A,D,E), append(E,B,F), components(C,D,F).\n", ds);
  TaskSpec spec;
  spec.task = "append";
  const auto tests = open_domain_tuples(spec, 50, 6, 3, *ds.symbols);
  EvalOptions o;
  o.intensional = true;
  const ScoreResult s = score_ground(d, tests, ds, o);
  CHECK(s.accuracy == 1.0);
}
