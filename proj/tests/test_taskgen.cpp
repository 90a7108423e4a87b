#include "common.hpp"
#include "doctest.h"

using namespace ffoil;

namespace {

TaskSpec spec(const char* name) {
  TaskSpec s;
  s.task = name;
  return s;
}

}  // namespace

TEST_CASE("list vocabularies") {
  CHECK(list_vocabulary(3, 3, true).size() == 40);
  CHECK(list_vocabulary(4, 4, true).size() == 341);
  CHECK(list_vocabulary(4, 4, false).size() == 65);
  const auto v = list_vocabulary(2, 2, true);
  CHECK(v == std::vector<std::string>{"[]", "[1]", "[2]", "[1,1]", "[1,2]", "[2,1]", "[2,2]"});
  CHECK_THROWS(list_vocabulary(10, 10, true));
}

TEST_CASE("generated task sizes") {
  const Dataset plus = gen_task(spec("plus")).dataset;
  CHECK(render_dataset(plus) == render_dataset(fixture::plus()));
  CHECK(gen_task(spec("append")).dataset.target.positives.size() == 142);
  CHECK(gen_task(spec("gcd")).dataset.target.positives.size() == 400);
  const Dataset ack = gen_task(spec("ackermann")).dataset;
  CHECK(ack.target.positives.size() == 51);
  for (const auto& t : ack.target.positives)
    for (ConstId c : t) CHECK(*ack.symbols->numeric(c) <= 20);
}

TEST_CASE("every roster task generates") {
  for (const auto& name : task_names()) {
    if (name == "noisy-fn") continue;
    TaskSpec s = spec(name.c_str());
    CHECK_NOTHROW(gen_task(s));
  }
  CHECK_THROWS(gen_task(spec("nope")));
}

TEST_CASE("noisy generator is deterministic") {
  const auto a = gen_noisy_functional(200, 5, 2, 0.10, 7).text();
  const auto b = gen_noisy_functional(200, 5, 2, 0.10, 7).text();
  CHECK(a == b);
  CHECK(a != gen_noisy_functional(200, 5, 2, 0.10, 8).text());
  CHECK_THROWS(gen_noisy_functional(200, 5, 2, 1.0, 7));
  CHECK_NOTHROW(gen_noisy_functional(200, 5, 2, 0.5, 7));
}

TEST_CASE("noise-free rules are recovered") {
  const Dataset ds = gen_noisy_functional(200, 5, 2, 0.0, 3).dataset;
  const LearnResult r = learn_ffoil(ds, fixture::config(Mode::Ffoil));
  CHECK(score(r.definition, ds.target.positives.tuples(), ds).accuracy == 1.0);
}

TEST_CASE("open-domain tuples") {
  SymbolTable st;
  const auto t = open_domain_tuples(spec("append"), 20, 6, 1, st);
  CHECK(t.size() == 20);
  for (const auto& x : t) {
    const std::string a = st.name(x[0]), b = st.name(x[1]), c = st.name(x[2]);
    const std::string inner = a.substr(1, a.size() - 2) + ((a.size() > 2 && b.size() > 2) ? "," : "") +
                              b.substr(1, b.size() - 2);
    CHECK(c == "[" + inner + "]");
  }
  SymbolTable st2;
  const auto u = open_domain_tuples(spec("append"), 20, 6, 1, st2);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(st.name(t[i][2]) == st2.name(u[i][2]));
  CHECK_FALSE(has_open_domain_oracle("gcd"));
}
