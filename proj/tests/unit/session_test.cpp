#include <gtest/gtest.h>

#include "hitl/errors.hpp"
#include "hitl/session.hpp"
#include "support.hpp"

using namespace hitl;
using namespace hitl::testing;

namespace {

SessionConfig config(int l, std::uint64_t seed) {
  SessionConfig c;
  c.budget_l = l;
  c.rng_seed = seed;
  return c;
}

const Subject& steve() {
  static const Subject s = Subject::builtin("triangle-steve");
  return s;
}

}  // namespace

TEST(Session, BudgetOfOneNeverQueries) {
  SimulatedHuman human(Subject::builtin("triangle-golden"));
  const auto r = run_session(config(1, 1), steve(), iv({2, 2, 2}), human);
  EXPECT_EQ(human.queries(), 0);
  ASSERT_EQ(r.suite.size(), 1u);
  EXPECT_EQ(r.suite[0].test, tc({2, 2, 2}, 2));
  EXPECT_EQ(r.suite[0].source, LabelSource::seed);
  EXPECT_TRUE(r.oracle.formula().is_true());
  EXPECT_EQ(r.termination, Termination::budget);
  EXPECT_EQ(r.generated, 0);
}

TEST(Session, ZeroTimeoutReturnsImmediately) {
  SimulatedHuman human(Subject::builtin("triangle-golden"));
  SessionConfig c = config(20, 1);
  c.loop_timeout = std::chrono::milliseconds(0);
  const auto r = run_session(c, steve(), iv({2, 2, 2}), human);
  EXPECT_EQ(r.termination, Termination::timeout);
  EXPECT_EQ(r.suite.size(), 1u);
  EXPECT_TRUE(r.oracle.formula().is_true());
  EXPECT_EQ(human.queries(), 0);
}

TEST(Session, RejectsPassingSeed) {
  SimulatedHuman human(Subject::builtin("triangle-golden"));
  EXPECT_THROW(run_session(config(5, 1), steve(), iv({1, 1, 1}), human), SeedNotFailing);
  EXPECT_THROW(run_session(config(5, 1), steve(), iv({1, 1}), human), StructuralError);
  SessionConfig bad = config(0, 1);
  EXPECT_THROW(run_session(bad, steve(), iv({2, 2, 2}), human), StructuralError);
}

TEST(Session, GoldenSessionInvariants) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SimulatedHuman human(Subject::builtin("triangle-golden"));
    SessionOptions opts;
    opts.ground_truth = Subject::builtin("triangle-golden");
    const int l = 12;
    const auto r = run_session(config(l, seed), steve(), iv({2, 2, 2}), human, opts);
    EXPECT_EQ(r.termination, Termination::budget);
    EXPECT_EQ(static_cast<int>(r.suite.size()), l);
    EXPECT_LE(human.queries(), l - 1);
    EXPECT_EQ(r.human_labeled, l - 1);
    EXPECT_LE(r.labeled_failing, r.human_labeled);
    EXPECT_LE(r.human_labeled, r.decided_to_label);
    EXPECT_LE(r.decided_to_label, r.generated);
    EXPECT_TRUE(is_consistent(r.oracle.formula(), r.suite));
    EXPECT_FALSE(find_contradiction(r.suite).has_value());

    const SimulatedHumanOracle golden(Subject::builtin("triangle-golden"));
    for (const auto& t : r.suite) {
      EXPECT_EQ(golden.label(t.test).label, t.label);
      EXPECT_EQ(steve().execute(t.test.input), t.test.output);
    }
    // One event per generated test plus the seed; labels in event order
    // rebuild the suite.
    ASSERT_EQ(static_cast<int>(r.events.size()), r.generated + 1);
    Suite rebuilt;
    for (const auto& e : r.events) {
      EXPECT_EQ(e.truth.has_value(), true);
      if (e.label) rebuilt.push_back(LabeledTest{e.test, *e.label, LabelSource::human});
      if (!e.is_seed()) {
        ASSERT_TRUE(e.decision.has_value());
        EXPECT_EQ(e.label.has_value(), e.decision->send_to_human);
      }
    }
    ASSERT_EQ(rebuilt.size(), r.suite.size());
    for (std::size_t i = 0; i < rebuilt.size(); ++i) EXPECT_EQ(rebuilt[i].test, r.suite[i].test);
  }
}

TEST(Session, NeverExceedsTheBudget) {
  for (int l = 1; l <= 6; ++l) {
    SimulatedHuman human(Subject::builtin("absdiff-golden"));
    const auto r = run_session(config(l, 40 + l), Subject::builtin("absdiff-buggy"), iv({1, 4}), human);
    EXPECT_LE(human.queries(), l - 1);
    EXPECT_EQ(static_cast<int>(r.suite.size()), l);
  }
}

TEST(Session, SameSeedSameResult) {
  SimulatedHuman a(Subject::builtin("triangle-golden")), b(Subject::builtin("triangle-golden"));
  const auto r1 = run_session(config(8, 99), steve(), iv({2, 2, 2}), a);
  const auto r2 = run_session(config(8, 99), steve(), iv({2, 2, 2}), b);
  EXPECT_EQ(r1.suite, r2.suite);
  EXPECT_EQ(r1.oracle.formula(), r2.oracle.formula());
  EXPECT_EQ(r1.generated, r2.generated);
}

namespace {

struct Recorder : SessionObserver {
  int events = 0;
  int oracles = 0;
  std::size_t last_suite = 0;
  void on_event(const SessionEvent&) override { ++events; }
  void on_oracle(const LearnedOracle& o, const Suite& s) override {
    ++oracles;
    last_suite = s.size();
    EXPECT_TRUE(is_consistent(o.formula(), s));
  }
};

// Stops answering after a fixed number of queries, like a human who walks away.
struct FlakyHuman : HumanOracle {
  SimulatedHumanOracle golden{Subject::builtin("triangle-golden")};
  int answers_left = 2;
  Label confirm_seed(const TestCase& t, Clock::time_point) override { return golden.label(t).label; }
  std::optional<Label> query(const TestCase& t, Clock::time_point) override {
    if (answers_left-- <= 0) return std::nullopt;
    return golden.label(t).label;
  }
  LabelSource source() const override { return LabelSource::human; }
};

}  // namespace

TEST(Session, ObserverSeesEveryStep) {
  SimulatedHuman human(Subject::builtin("triangle-golden"));
  Recorder rec;
  SessionOptions opts;
  opts.observer = &rec;
  const auto r = run_session(config(6, 5), steve(), iv({2, 2, 2}), human, opts);
  EXPECT_EQ(rec.events, static_cast<int>(r.events.size()));
  EXPECT_EQ(rec.oracles, 6);
  EXPECT_EQ(rec.last_suite, 6u);
}

TEST(Session, UnansweredQueriesDoNotCount) {
  FlakyHuman human;
  SessionConfig c = config(6, 3);
  c.loop_timeout = std::chrono::milliseconds(1500);
  const auto r = run_session(c, steve(), iv({2, 2, 2}), human);
  EXPECT_EQ(r.suite.size(), 3u);
  EXPECT_EQ(r.termination, Termination::timeout);
  int unanswered = 0;
  for (const auto& e : r.events) unanswered += e.unanswered;
  EXPECT_GT(unanswered, 0);
}

TEST(Session, CancelStopsTheLoop) {
  SimulatedHuman human(Subject::builtin("triangle-golden"));
  std::atomic<bool> cancel{true};
  SessionOptions opts;
  opts.cancel = &cancel;
  const auto r = run_session(config(10, 1), steve(), iv({2, 2, 2}), human, opts);
  EXPECT_EQ(r.termination, Termination::interrupted);
  EXPECT_EQ(r.suite.size(), 1u);
}

TEST(Session, PersistentSubjectErrorsAbort) {
  // Crashes everywhere except at the seed.
  const Subject picky = Subject::function("picky", 1, [](std::span<const Rational> s) {
    if (s[0] != 5) throw SubjectCrash("boom");
    return Rational(1);
  });
  SimulatedHuman human(Subject::function("gold", 1, [](std::span<const Rational>) {
    return Rational(0);
  }));
  SessionConfig c = config(3, 1);
  c.mutation.keep_prob = 0.0;
  EXPECT_THROW(run_session(c, picky, iv({5}), human), SessionAborted);
}
