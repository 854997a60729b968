#pragma once

#include <initializer_list>
#include <string>

#include "hitl/model.hpp"
#include "hitl/rational.hpp"
#include "hitl/subject.hpp"

namespace hitl::testing {

inline Rational q(const char* text) { return parse_rational(text); }

inline InputVector iv(std::initializer_list<long long> values) {
  InputVector out;
  for (long long v : values) out.emplace_back(v);
  return out;
}

inline TestCase tc(std::initializer_list<long long> input, long long output) {
  return TestCase{iv(input), Rational(output)};
}

inline LabeledTest failing(TestCase t) {
  return LabeledTest{std::move(t), Label{Verdict::failing, std::nullopt}, LabelSource::human};
}

inline LabeledTest passing(TestCase t) {
  Rational out = t.output;
  return LabeledTest{std::move(t), Label{Verdict::passing, out}, LabelSource::human};
}

// Exact failure condition of the buggy triangle classifier.
inline const char* kTriangleFailure =
    "(or (and (= (- x0 x1) 0) (= (- x1 x2) 0) (distinct x0 1) (= o 2)) "
    "(and (= (- x0 x1) 0) (= x2 1) (distinct x0 1) (= o 1)))";

// The buggy triangle program labeled by the golden one on [lo..hi]^3.
inline Suite triangle_grid(long long lo, long long hi) {
  const Subject steve = Subject::builtin("triangle-steve");
  const SimulatedHumanOracle golden(Subject::builtin("triangle-golden"));
  Suite out;
  for (long long a = lo; a <= hi; ++a)
    for (long long b = lo; b <= hi; ++b)
      for (long long c = lo; c <= hi; ++c)
        out.push_back(golden.label(run_subject(steve, iv({a, b, c}))));
  return out;
}

}  // namespace hitl::testing
