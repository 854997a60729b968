#include <gtest/gtest.h>

#include "hitl/errors.hpp"
#include "hitl/formula.hpp"
#include "hitl/subject.hpp"
#include "support.hpp"

using namespace hitl;
using namespace hitl::testing;

TEST(Subject, BuggyTriangleOutputs) {
  const Subject steve = Subject::builtin("triangle-steve");
  EXPECT_EQ(steve.execute(iv({2, 2, 2})), Rational(2));
  EXPECT_EQ(steve.execute(iv({1, 2, 3})), Rational(4));
  EXPECT_EQ(steve.execute(iv({3, 3, 3})), Rational(2));
  EXPECT_EQ(steve.execute(iv({1, 1, 1})), Rational(1));
  EXPECT_EQ(steve.execute(iv({3, 3, 1})), Rational(1));
  EXPECT_EQ(Subject::builtin("triangle-golden").execute(iv({2, 2, 2})), Rational(1));
}

TEST(Subject, SimulatedHumanLabels) {
  const Subject steve = Subject::builtin("triangle-steve");
  const SimulatedHumanOracle golden(Subject::builtin("triangle-golden"));

  const auto a = golden.label(run_subject(steve, iv({2, 2, 2})));
  EXPECT_TRUE(a.failing());
  EXPECT_EQ(a.label.expected_output, Rational(1));
  EXPECT_EQ(a.source, LabelSource::simulated_golden);

  EXPECT_FALSE(golden.label(run_subject(steve, iv({1, 2, 3}))).failing());
  EXPECT_FALSE(golden.label(run_subject(steve, iv({1, 1, 1}))).failing());
}

// Hand-written failure conditions must match golden comparison on a grid.
TEST(Subject, CatalogFailureConstraintsMatchGolden) {
  for (const auto& info : builtin_catalog()) {
    if (info.failure_constraint.empty()) continue;
    const std::string stem = info.name.substr(0, info.name.find('-'));
    const Subject buggy = Subject::builtin(info.name);
    const SimulatedHumanOracle golden(Subject::builtin(stem + "-golden"));
    const LraFormula f = text_to_formula(info.failure_constraint, info.arity);
    std::vector<long long> idx(info.arity, -2);
    for (;;) {
      InputVector in;
      for (long long v : idx) in.emplace_back(v);
      const auto t = golden.label(run_subject(buggy, in));
      EXPECT_EQ(evaluate_formula(f, t.test), t.failing()) << info.name << " " << input_to_string(in);
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] > 8) idx[k++] = -2;
      if (k == idx.size()) break;
    }
  }
}

TEST(Subject, ArityMismatchIsStructural) {
  EXPECT_THROW(run_subject(Subject::builtin("triangle-steve"), iv({1, 2})), StructuralError);
  EXPECT_THROW(Subject::from_spec("builtin:triangle-steve", 2), Error);
  EXPECT_THROW(Subject::builtin("nope"), StructuralError);
}

TEST(Subject, SpecRoundTrips) {
  const Subject s = Subject::from_spec("builtin:absdiff-buggy");
  EXPECT_EQ(s.arity(), 2u);
  EXPECT_EQ(Subject::from_spec(s.spec()).spec(), s.spec());
  const Subject cmd = Subject::from_spec("awk '{print $1+$2}'", 2);
  EXPECT_EQ(cmd.kind(), Subject::Kind::external);
  EXPECT_EQ(Subject::from_spec(cmd.spec(), 2).spec(), cmd.spec());
}

TEST(Subject, ExternalCommand) {
  const Subject add = Subject::external("awk '{print $1+$2}'", 2);
  EXPECT_EQ(add.execute(iv({3, 4})), Rational(7));
  const Subject frac = Subject::external("awk '{print $1 / 4}'", 1);
  EXPECT_EQ(frac.execute(iv({3})), Rational(3, 4));
}

TEST(Subject, ExternalCommandEchoesFractionsExactly) {
  const Subject echo = Subject::external("cat", 1);
  EXPECT_EQ(echo.execute(InputVector{Rational(-7, 3)}), Rational(-7, 3));
}

TEST(Subject, ExternalErrors) {
  EXPECT_THROW(Subject::external("exit 3", 1).execute(iv({1})), SubjectCrash);
  EXPECT_THROW(Subject::external("echo hello", 1).execute(iv({1})), OutputFormatError);
  EXPECT_THROW(Subject::external("echo", 1).execute(iv({1})), OutputFormatError);
  const Subject slow = Subject::external("sleep 5", 1, std::chrono::milliseconds(200));
  EXPECT_THROW(slow.execute(iv({1})), SubjectTimeout);
}

TEST(Subject, OracleUnavailableWhenGoldenCrashes) {
  const SimulatedHumanOracle golden(Subject::external("exit 1", 1));
  EXPECT_THROW(golden.label(tc({1}, 1)), OracleUnavailable);
}
