#include <algorithm>
#include <set>

#include "common.hpp"
#include "doctest.h"

using namespace ffoil;

TEST_CASE("plus file parses into six positives and two dec tuples") {
  const Dataset ds = fixture::plus();
  CHECK(ds.target.name == "plus");
  CHECK(ds.target.positives.size() == 6);
  REQUIRE(ds.backgrounds.size() == 1);
  CHECK(ds.backgrounds[0].name == "dec");
  CHECK(ds.backgrounds[0].positives.size() == 2);
  CHECK(ds.types[0].theory_constants.size() == 1);
  REQUIRE(ds.orders.size() == 1);
  CHECK(ds.orders[0] == OrderDecl{"dec", 1, 0, true});
}

TEST_CASE("parse errors carry a position") {
  const char* empty = "type t: a, b\ntarget f(t, t)\n.\n";
  try {
    parse_dataset(empty);
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("target relation has no positive tuples") != std::string::npos);
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_dataset("type t: a\ntarget f(t)\nb\n.\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset("type t: a\ntarget f(u)\na\n.\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset("type t: a, b\ntarget f(t, t)\na\n.\n"), ParseError);
}

TEST_CASE("closed-world complement is the product minus the positives") {
  const Dataset ds = fixture::plus();
  const auto neg = closed_world_complement(ds.target, ds.types);
  CHECK(neg.size() == 21);
  CHECK(product_size(ds.target, ds.types) == 27);
  // Oracle: enumerate 0..2 cubed and test the arithmetic directly.
  std::set<Tuple> expected;
  for (const char* a : {"0", "1", "2"})
    for (const char* b : {"0", "1", "2"})
      for (const char* c : {"0", "1", "2"})
        if (std::stoi(a) + std::stoi(b) != std::stoi(c)) expected.insert(fixture::tup(ds, {a, b, c}));
  CHECK(std::set<Tuple>(neg.begin(), neg.end()) == expected);

  Dataset full = parse_dataset("type t: a, b\ntarget f(t)\na\nb\n.\n");
  CHECK(closed_world_complement(full.target, full.types).empty());
}

TEST_CASE("functionality report") {
  const Dataset ds = fixture::plus();
  const auto rep = check_functional(ds.target);
  CHECK(rep.functional);
  CHECK(rep.range_size == 3);

  Dataset bad = parse_dataset("type t: a\ntype n: 1, 2\ntarget f(t, n)\na, 1\na, 2\n.\n");
  const auto r2 = check_functional(bad.target);
  CHECK_FALSE(r2.functional);
  REQUIRE(r2.violations.size() == 1);
  CHECK(r2.violations[0] == fixture::tup(bad, {"a"}));

  const Dataset gcd = fixture::task("gcd");
  CHECK(check_functional(gcd.target).functional);
  CHECK(gcd.target.positives.size() == 400);
}

TEST_CASE("most common output") {
  const Dataset ds = fixture::plus();
  CHECK(most_common_output(ds.target, ds.types[0]) == fixture::c(ds, "2"));

  Dataset once = parse_dataset("type t: a, b\ntype o: x, y\ntarget f(t, o)\na, x\nb, y\n.\n");
  CHECK_FALSE(most_common_output(once.target, once.types[1]).has_value());

  Dataset major = parse_dataset("type t: a, b, c\ntype o: x, y\ntarget f(t, o)\na, x\nb, x\nc, y\n.\n");
  CHECK(most_common_output(major.target, major.types[1]) == fixture::c(major, "x"));

  Dataset tie = parse_dataset("type t: a, b\ntype o: y, x\ntarget f(t, o)\na, x\nb, y\na, y\n.\n");
  CHECK(most_common_output(tie.target, tie.types[1]) == fixture::c(tie, "y"));
}

TEST_CASE("render then parse reproduces the dataset") {
  for (const char* name : {"plus", "append", "gcd"}) {
    const Dataset ds = fixture::task(name);
    const std::string text = render_dataset(ds);
    const Dataset back = parse_dataset(text);
    CHECK(render_dataset(back) == text);
    CHECK(back.target.positives.size() == ds.target.positives.size());
    CHECK(back.orders == ds.orders);
  }
  CHECK(parse_dataset(render_dataset(fixture::plus())).target.positives == fixture::plus().target.positives);
}

TEST_CASE("quoted constants survive a round trip") {
  for (const char* s : {"[1,2]", "a b", "x,y", "'q'"}) {
    const std::string q = quote_constant(s);
    Dataset ds = parse_dataset("type t: " + q + "\ntarget f(t)\n" + q + "\n.\n");
    CHECK(ds.symbol(ds.target.positives[0][0]) == s);
  }
}
