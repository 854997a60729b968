#include <gtest/gtest.h>

#include "hitl/errors.hpp"
#include "hitl/eval.hpp"
#include "support.hpp"

using namespace hitl;
using namespace hitl::testing;

namespace {

const Subject& steve() {
  static const Subject s = Subject::builtin("triangle-steve");
  return s;
}
const Subject& golden() {
  static const Subject s = Subject::builtin("triangle-golden");
  return s;
}

}  // namespace

TEST(Eval, AccuracyArithmetic) {
  const auto f = text_to_formula("(<= x0 0)", 1);
  const Suite v{failing(tc({0}, 0)), failing(tc({1}, 0)), passing(tc({2}, 0)), passing(tc({3}, 0))};
  EXPECT_EQ(prediction_accuracy(f, v), Rational(3, 4));
  EXPECT_EQ(conditional_accuracy(f, v), Rational(1, 2));
  EXPECT_EQ(conditional_accuracy(LraFormula::truth(1), v), Rational(1));
  EXPECT_THROW(prediction_accuracy(f, Suite{}), StructuralError);
  EXPECT_THROW(conditional_accuracy(f, Suite{passing(tc({2}, 0))}), StructuralError);
}

TEST(Eval, GroundTruthFormulaIsExactOnTheGrid) {
  const auto v = grid_validation_suite(steve(), golden(), 1, 6);
  EXPECT_EQ(v.size(), 216u);
  const auto f = text_to_formula(kTriangleFailure, 3);
  EXPECT_EQ(prediction_accuracy(f, v), Rational(1));
  EXPECT_EQ(conditional_accuracy(f, v), Rational(1));
  EXPECT_EQ(grid_validation_suite(steve(), golden(), 1, 6, iv({2, 2, 2})).size(), 215u);
}

TEST(Eval, MemorizedSeedMissesEverythingElse) {
  const Suite seed{failing(tc({2, 2, 2}, 2))};
  const auto v = grid_validation_suite(steve(), golden(), 1, 6, iv({2, 2, 2}));
  EXPECT_EQ(conditional_accuracy(memorize_fallback(seed), v), Rational(0));
}

TEST(Eval, EffortMetrics) {
  std::vector<SessionEvent> events(41);
  for (int i = 1; i <= 40; ++i) {
    auto& e = events[i];
    e.iter = i;
    e.decision = i <= 6 ? shortcut_decision() : tally_votes(i <= 10 ? 20 : 0, 10);
    if (i <= 10) e.label = Label{i <= 7 ? Verdict::failing : Verdict::passing, std::nullopt};
    e.truth = i <= 12 ? Verdict::failing : Verdict::passing;
  }
  events[0].label = Label{};
  const auto m = effort_metrics(events);
  EXPECT_EQ(m.generated, 40);
  EXPECT_EQ(m.labeled, 10);
  EXPECT_EQ(m.labeled_failing, 7);
  EXPECT_EQ(m.shortcut_sent, 6);
  EXPECT_EQ(m.committee_sent, 4);
  EXPECT_EQ(m.p_labeled, Rational(1, 4));
  EXPECT_EQ(m.p_label_failing, Rational(7, 10));
  EXPECT_EQ(m.generated_failing, 12);
  EXPECT_EQ(m.p_generate_failing, Rational(3, 10));

  events.resize(3);
  for (auto& e : events) e.truth.reset();
  events[1].label.reset();
  events[2].label.reset();
  const auto none = effort_metrics(events);
  EXPECT_FALSE(none.p_label_failing.has_value());
  EXPECT_FALSE(none.p_generate_failing.has_value());
  EXPECT_EQ(none.p_labeled, Rational(0));
}

TEST(Eval, ValidationScores) {
  const auto v = grid_validation_suite(steve(), golden(), 1, 6);
  EXPECT_EQ(validation_score(golden(), v, golden()), Rational(1));
  EXPECT_EQ(validation_score(Subject::builtin("triangle-fixed"), v, golden()), Rational(1));
  // 9 failing points out of 216 plus the seed.
  EXPECT_EQ(validation_score(steve(), v, golden()), Rational(216 - 10, 216));
  const Rational overfit = validation_score(Subject::builtin("triangle-overfit"), v, golden());
  EXPECT_LT(overfit, Rational(1));
  EXPECT_LT(overfit, validation_score(Subject::builtin("triangle-fixed"), v, golden()));
}

TEST(Eval, CrashingPatchFailsTests) {
  const Subject crash = Subject::function("crash", 3, [](std::span<const Rational>) -> Rational {
    throw SubjectCrash("boom");
  });
  const auto v = grid_validation_suite(steve(), golden(), 1, 2);
  EXPECT_EQ(validation_score(crash, v, golden()), Rational(0));
}

TEST(Eval, ExperimentRowsAndDeterministicCsv) {
  ExperimentPlan plan;
  plan.subjects.push_back(builtin_experiment("absdiff"));
  plan.l_values = {2, 3, 4};
  plan.repetitions = 2;
  plan.record_wall_time = false;
  const auto a = run_experiment(plan);
  EXPECT_EQ(a.size(), 6u);
  for (const auto& r : a) EXPECT_TRUE(r.ok()) << r.status;
  plan.jobs = 3;
  const auto b = run_experiment(plan);
  EXPECT_EQ(runs_csv(a), runs_csv(b));
  EXPECT_EQ(summary_csv(a), summary_csv(b));
  const std::string csv = runs_csv(a);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_THROW(builtin_experiment("nope"), Error);
}

TEST(Eval, Median) {
  EXPECT_DOUBLE_EQ(median({3, 1, 2}), 2);
  EXPECT_DOUBLE_EQ(median({4, 1, 2, 3}), 2.5);
}
