#include <gtest/gtest.h>

#include "hitl/committee.hpp"
#include "hitl/errors.hpp"
#include "support.hpp"

using namespace hitl;
using namespace hitl::testing;

TEST(Committee, Tally) {
  const auto half = tally_votes(10, 10);
  EXPECT_EQ(half.theta_hat, Rational(1, 2));
  EXPECT_TRUE(half.send_to_human);
  EXPECT_FALSE(half.shortcut);

  const auto low = tally_votes(4, 10);
  EXPECT_EQ(low.theta_hat, Rational(1, 5));
  EXPECT_FALSE(low.send_to_human);

  EXPECT_FALSE(tally_votes(9, 10).send_to_human);
  EXPECT_TRUE(tally_votes(20, 10).send_to_human);
  EXPECT_EQ(tally_votes(0, 10).theta_hat, Rational(0));
}

TEST(Committee, TallyExactForEverySize) {
  for (int s = 1; s <= 12; ++s)
    for (int v = 0; v <= 2 * s; ++v) {
      const auto d = tally_votes(v, s);
      EXPECT_EQ(d.theta_hat, Rational(v, 2 * s));
      EXPECT_EQ(d.send_to_human, 2 * v >= 2 * s);
    }
}

TEST(Committee, AbstentionsShrinkTheCommittee) {
  const auto d = tally_votes(4, 10, 6);
  EXPECT_EQ(d.members, 4);
  EXPECT_EQ(d.theta_hat, Rational(1, 2));
  EXPECT_TRUE(d.send_to_human);
  const auto none = tally_votes(0, 10, 10);
  EXPECT_FALSE(none.theta_hat.has_value());
  EXPECT_FALSE(none.send_to_human);
  EXPECT_THROW(tally_votes(9, 4, 0), StructuralError);
  EXPECT_THROW(tally_votes(0, 0), StructuralError);
}

TEST(Committee, ShortcutWhenCurrentOraclePredictsFailing) {
  const Subject steve = Subject::builtin("triangle-steve");
  const Suite seed{failing(tc({2, 2, 2}, 2))};
  const Suite with_pass{failing(tc({2, 2, 2}, 2)), passing(tc({1, 1, 1}, 1))};
  const auto eq1 = LearnedOracle::checked(text_to_formula(kTriangleFailure, 3), with_pass,
                                          Provenance::searched);
  Rng rng(1);
  const auto d = decide2label(tc({3, 3, 3}, 2), eq1, with_pass, steve, CommitteeSettings{}, rng);
  EXPECT_TRUE(d.shortcut);
  EXPECT_TRUE(d.send_to_human);

  const auto truth = smt_learn(seed);
  for (const auto& t : {tc({1, 2, 3}, 4), tc({9, -1, 0}, 4), tc({5, 5, 5}, 2)}) {
    const auto s = decide2label(t, truth, seed, steve, CommitteeSettings{}, rng);
    EXPECT_TRUE(s.shortcut && s.send_to_human);
  }
}

TEST(Committee, VotesWhenCurrentOraclePredictsPassing) {
  const Subject steve = Subject::builtin("triangle-steve");
  const Suite suite{failing(tc({2, 2, 2}, 2)), passing(tc({3, 2, 2}, 2))};
  const auto current = smt_learn(suite);
  const TestCase candidate = tc({4, 2, 2}, 2);
  ASSERT_FALSE(current.predicts_failing(candidate));
  CommitteeSettings settings;
  settings.committee_s = 4;
  Rng a(17), b(17);
  const auto d1 = decide2label(candidate, current, suite, steve, settings, a);
  const auto d2 = decide2label(candidate, current, suite, steve, settings, b);
  EXPECT_FALSE(d1.shortcut);
  EXPECT_EQ(d1.members + d1.abstained, 4);
  ASSERT_TRUE(d1.theta_hat.has_value());
  EXPECT_EQ(*d1.theta_hat, Rational(d1.votes, 2 * d1.members));
  EXPECT_EQ(d1.send_to_human, *d1.theta_hat >= Rational(1, 2));
  EXPECT_EQ(d1.votes, d2.votes);
  EXPECT_EQ(d1.send_to_human, d2.send_to_human);
  EXPECT_EQ(d1.theta_hat, d2.theta_hat);
}

// A subject whose only neighbor collides with a labeled point: every member
// pair keeps redrawing and finally abstains.
TEST(Committee, CollidingNeighborsAbstain) {
  const Subject constant = Subject::function("const", 1, [](std::span<const Rational>) {
    return Rational(0);
  });
  const Suite suite{failing(tc({1}, 0)), passing(tc({2}, 0))};
  const auto current = smt_learn(suite);
  ASSERT_FALSE(current.predicts_failing(tc({2}, 0)));
  CommitteeSettings settings;
  settings.committee_s = 3;
  settings.mutation.keep_prob = 1.0;
  Rng rng(1);
  const auto d = decide2label(tc({2}, 0), current, suite, constant, settings, rng);
  EXPECT_EQ(d.abstained, 3);
  EXPECT_FALSE(d.theta_hat.has_value());
  EXPECT_FALSE(d.send_to_human);
}
