#pragma once

#include <cmath>
#include <string>

#include "ffoil/dataset.hpp"
#include "ffoil/evaluator.hpp"
#include "ffoil/learner.hpp"
#include "ffoil/taskgen.hpp"

namespace fixture {

inline const char* kPlusText = R"(% plus over 0..2
type num: *0, 1, 2
target plus(num, num, num)
0, 0, 0
1, 0, 1
2, 0, 2
0, 1, 1
1, 1, 2
0, 2, 2
.
background dec(num, num)
1, 0
2, 1
.
order dec 2 < 1
)";

inline ffoil::Dataset plus() { return ffoil::parse_dataset(kPlusText); }

inline ffoil::Dataset task(const std::string& name) {
  ffoil::TaskSpec s;
  s.task = name;
  return ffoil::gen_task(s).dataset;
}

inline ffoil::LearnerConfig config(ffoil::Mode mode, bool negation = true) {
  ffoil::LearnerConfig cfg;
  cfg.mode = mode;
  cfg.allow_negation = negation;
  return cfg;
}

inline ffoil::Definition parse_def(const std::string& text, ffoil::Dataset& ds) {
  return ffoil::parse_prolog_definition(text, *ds.symbols);
}

inline ffoil::ConstId c(const ffoil::Dataset& ds, const std::string& s) { return *ds.symbols->find(s); }

inline ffoil::Tuple tup(const ffoil::Dataset& ds, std::initializer_list<const char*> xs) {
  ffoil::Tuple t;
  for (const char* x : xs) t.push_back(c(ds, x));
  return t;
}

// -log2 of the positive fraction, written out independently of the engine.
inline double bits(double p, double n) { return -std::log(p / (p + n)) / std::log(2.0); }

inline const char* kFfoilPlus =
    "plus(A,0,A) :- !.\n"
    "plus(A,B,C) :- dec(B,D), dec(E,A), plus(E,D,C), !.\n"
    "plus(A,B,2).\n";

inline const char* kFoilPlus =
    "plus(0,B,B).\n"
    "plus(A,B,C) :- dec(A,D), dec(C,E), plus(B,D,E).\n";

inline const char* kFoilGcd =
    "gcd(A,A,A).\n"
    "gcd(A,B,C) :- plus(B,D,A), gcd(B,A,C).\n"
    "gcd(A,B,C) :- plus(A,D,B), gcd(A,D,C).\n";

inline const char* kFfoilGcd =
    "gcd(A,A,A) :- !.\n"
    "gcd(A,B,C) :- plus(A,D,B), gcd(A,D,C), !.\n"
    "gcd(A,B,C) :- gcd(B,A,C), !.\n";

}  // namespace fixture
