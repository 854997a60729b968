#pragma once

#include <optional>
#include <span>

#include "hitl/config.hpp"
#include "hitl/fuzzer.hpp"
#include "hitl/learner.hpp"
#include "hitl/model.hpp"
#include "hitl/subject.hpp"

namespace hitl {

struct CommitteeDecision {
  bool send_to_human = false;
  // The current oracle already predicts failing; no committee was consulted.
  bool shortcut = false;
  int votes = 0;
  // Members per label polarity that were actually built (S minus abstentions).
  int members = 0;
  int abstained = 0;
  // votes / (2 * members); absent on the shortcut path or when every member abstained.
  std::optional<Rational> theta_hat;
};

CommitteeDecision shortcut_decision();

// Aggregates committee votes: theta = votes / (2 * (S - abstained)) and the
// test goes to the human iff theta >= 1/2.
CommitteeDecision tally_votes(int votes, int committee_s, int abstained = 0);

struct CommitteeSettings {
  int committee_s = 10;
  MutationConfig mutation;
  LearnerBudget learner;
  // Redraws of a hypothetical test before its member pair abstains.
  int max_redraws = 10;
};

// Estimates whether `candidate` is failing. If `current` already predicts
// failing the test goes straight to the human. Otherwise S neighbors t' are
// fuzzed from `candidate`; for each, one oracle is learned with t' assumed
// passing and one with t' assumed failing, and each votes on `candidate`.
CommitteeDecision decide2label(const TestCase& candidate, const LearnedOracle& current,
                               std::span<const LabeledTest> suite, const Subject& subject,
                               const CommitteeSettings& settings, Rng& rng);

}  // namespace hitl
