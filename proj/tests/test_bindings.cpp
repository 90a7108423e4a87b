#include <set>

#include "common.hpp"
#include "doctest.h"

using namespace ffoil;

namespace {

std::vector<Tuple> plus_negatives(const Dataset& ds) { return closed_world_complement(ds.target, ds.types); }

Literal rel(const char* name, std::initializer_list<VarId> vs) {
  std::vector<Term> args;
  for (VarId v : vs) args.push_back(Term::var(v));
  return Literal::rel(name, args);
}

std::multiset<std::string> rows(const BindingTable& t, const Dataset& ds) {
  std::multiset<std::string> out;
  const std::string dump = dump_table(t, *ds.symbols);
  std::size_t start = 0;
  while (start < dump.size()) {
    const std::size_t end = dump.find('\n', start);
    out.insert(dump.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("information values") {
  CHECK(information(6, 21) == doctest::Approx(fixture::bits(6, 21)).epsilon(1e-12));
  CHECK(information(6, 21) == doctest::Approx(2.169925).epsilon(1e-6));
  CHECK(information(3, 6) == doctest::Approx(1.584962).epsilon(1e-6));
  CHECK(information(5, 0) == 0.0);
  CHECK_THROWS(information(0, 3));
  for (int n = 1; n < 10; ++n) CHECK(information(n + 1, 4) < information(n, 4));
}

TEST_CASE("effective counts in both modes") {
  const Dataset ds = fixture::plus();
  BindingEngine foil(ds, Mode::Foil);
  const auto t0 = foil.initial_table(ds.target.positives.tuples(), plus_negatives(ds));
  const auto e0 = effective_counts(t0);
  CHECK(e0.plus == 6);
  CHECK(e0.minus == 21);

  BindingEngine ff(ds, Mode::Ffoil);
  const auto t1 = ff.initial_table(ds.target.positives.tuples());
  CHECK(t1.size() == 6);
  const auto e1 = effective_counts(t1);
  CHECK(e1.plus == 6);
  CHECK(e1.minus == 12);

  BindingTable pos(2, Mode::Foil);
  for (ConstId i = 0; i < 3; ++i) pos.add_row(Tuple{i, i}, Label::Pos);
  CHECK(effective_counts(pos).plus == 3);
  CHECK(effective_counts(pos).minus == 0);
}

TEST_CASE("extension on the plus tables") {
  const Dataset ds = fixture::plus();
  const ConstId zero = fixture::c(ds, "0");
  BindingEngine foil(ds, Mode::Foil);
  const auto t0 = foil.initial_table(ds.target.positives.tuples(), plus_negatives(ds));
  const auto t1 = foil.extend(t0, Literal::eq_const(0, zero));
  CHECK(t1.size() == 9);
  CHECK(t1.count(Label::Pos) == 3);
  CHECK(t1.count(Label::Neg) == 6);

  BindingEngine ff(ds, Mode::Ffoil);
  const auto f0 = ff.initial_table(ds.target.positives.tuples());
  const auto f1 = ff.extend(f0, Literal::eq_var(0, 2));
  CHECK(rows(f1, ds) == std::multiset<std::string>{"0,0,0 +", "1,0,1 +", "2,0,2 +", "0,1,0 -", "1,1,1 -", "0,2,0 -"});

  // The three tuples the first clause leaves, then the two dec literals.
  const std::vector<Tuple> rest = {fixture::tup(ds, {"0", "1", "1"}), fixture::tup(ds, {"1", "1", "2"}),
                                   fixture::tup(ds, {"0", "2", "2"})};
  auto f2 = ff.initial_table(rest);
  f2 = ff.extend(f2, rel("dec", {1, 3}));
  f2 = ff.extend(f2, rel("dec", {4, 0}));
  CHECK(f2.width() == 5);
  CHECK(rows(f2, ds) == std::multiset<std::string>{"0,1,_,0,1 o", "1,1,_,0,2 o", "0,2,_,1,1 o"});
}

TEST_CASE("gain on the plus tables") {
  const Dataset ds = fixture::plus();
  const ConstId zero = fixture::c(ds, "0");
  BindingEngine foil(ds, Mode::Foil);
  const auto t0 = foil.initial_table(ds.target.positives.tuples(), plus_negatives(ds));
  const auto g = foil.gain(t0, Literal::eq_const(0, zero));
  CHECK(g.k == 3);
  CHECK(g.gain == doctest::Approx(3 * (fixture::bits(6, 21) - fixture::bits(3, 6))).epsilon(1e-12));
  CHECK(g.gain == doctest::Approx(1.7548875).epsilon(1e-7));
  CHECK(g.max_possible == doctest::Approx(6 * fixture::bits(6, 21)));

  BindingEngine ff(ds, Mode::Ffoil);
  const auto f0 = ff.initial_table(ds.target.positives.tuples());
  CHECK(ff.gain(f0, Literal::eq_const(0, zero)).gain == doctest::Approx(0.0));
  const auto gc = ff.gain(f0, Literal::eq_var(0, 2));
  CHECK(gc.binds_output);
  CHECK(gc.gain == doctest::Approx(3 * (fixture::bits(6, 12) - fixture::bits(3, 3))).epsilon(1e-12));
}

TEST_CASE("determinacy on second-clause tables") {
  const Dataset ds = fixture::plus();
  BindingEngine foil(ds, Mode::Foil);
  const ConstId zero = fixture::c(ds, "0");
  // Second FOIL clause: positives not covered by plus(0,B,B).
  std::vector<Tuple> rest;
  for (const auto& t : ds.target.positives) if (t[0] != zero) rest.push_back(t);
  const auto t = foil.initial_table(rest, plus_negatives(ds));
  CHECK(foil.is_determinate(t, rel("dec", {0, 3})));
  CHECK_FALSE(foil.is_determinate(t, rel("dec", {3, 0})));

  BindingEngine ff(ds, Mode::Ffoil);
  const std::vector<Tuple> frest = {fixture::tup(ds, {"0", "1", "1"}), fixture::tup(ds, {"1", "1", "2"}),
                                    fixture::tup(ds, {"0", "2", "2"})};
  const auto f = ff.initial_table(frest);
  CHECK(ff.is_determinate(f, rel("dec", {1, 3})));
  CHECK(ff.is_determinate(f, rel("dec", {4, 0})));
}

TEST_CASE("selection on plus") {
  const Dataset ds = fixture::plus();
  LearnerConfig cfg;
  cfg.allow_negation = false;
  EnumerationOptions eo;
  eo.allow_negation = false;
  BindingEngine foil(ds, Mode::Foil);
  const auto t0 = foil.initial_table(ds.target.positives.tuples(), plus_negatives(ds));
  const Clause c = Clause::most_general(ds.target);
  const auto sel = select_literals(foil, t0, candidate_literals(c, ds, eo), cfg);
  CHECK(sel.action == Action::BestGain);
  REQUIRE(sel.chosen.size() == 1);
  CHECK(render_literal(sel.chosen[0].literal, *ds.symbols) == "A=0");
  CHECK(sel.chosen[0].stats.max_possible * cfg.near_max_ratio == doctest::Approx(0.8 * 6 * fixture::bits(6, 21)));

  // A literal that keeps every positive and drops every negative.
  const auto t1 = foil.extend(t0, Literal::eq_const(0, fixture::c(ds, "0")));
  Clause c1 = c;
  c1.add_literal(Literal::eq_const(0, fixture::c(ds, "0")), ds);
  const auto s1 = select_literals(foil, t1, candidate_literals(c1, ds, eo), cfg);
  CHECK(s1.action == Action::NearMax);
  CHECK(render_literal(s1.chosen[0].literal, *ds.symbols) == "B=C");

  std::vector<Tuple> rest;
  for (const auto& t : ds.target.positives) if (t[0] != fixture::c(ds, "0")) rest.push_back(t);
  const auto t2 = foil.initial_table(rest, plus_negatives(ds));
  const auto s2 = select_literals(foil, t2, candidate_literals(c, ds, eo), cfg);
  CHECK(s2.action == Action::Determinates);
  std::vector<std::string> names;
  for (const auto& s : s2.chosen) names.push_back(render_literal(s.literal, *ds.symbols));
  // dec(D,B) is also determinate on these rows.
  CHECK(names == std::vector<std::string>{"dec(A,D)", "dec(C,D)", "dec(D,B)"});
}

TEST_CASE("dump format") {
  const Dataset ds = fixture::plus();
  BindingEngine ff(ds, Mode::Ffoil);
  const auto t = ff.initial_table({fixture::tup(ds, {"1", "1", "2"})});
  CHECK(dump_table(t, *ds.symbols) == "1,1,_ o\n");
}
