#include "hitl/committee.hpp"

#include "hitl/errors.hpp"

namespace hitl {

CommitteeDecision shortcut_decision() {
  CommitteeDecision d;
  d.send_to_human = true;
  d.shortcut = true;
  return d;
}

CommitteeDecision tally_votes(int votes, int committee_s, int abstained) {
  if (committee_s < 1) throw StructuralError("committee size S must be >= 1");
  if (abstained < 0 || abstained > committee_s)
    throw StructuralError("abstentions must lie in [0, S]");
  const int members = committee_s - abstained;
  if (votes < 0 || votes > 2 * members)
    throw StructuralError("votes must lie in [0, 2 * members]");
  CommitteeDecision d;
  d.votes = votes;
  d.members = members;
  d.abstained = abstained;
  if (members > 0) {
    d.theta_hat = Rational(votes, 2 * members);
    d.send_to_human = *d.theta_hat >= Rational(1, 2);
  }
  return d;
}

CommitteeDecision decide2label(const TestCase& candidate, const LearnedOracle& current,
                               std::span<const LabeledTest> suite, const Subject& subject,
                               const CommitteeSettings& settings, Rng& rng) {
  if (settings.committee_s < 1) throw StructuralError("committee size S must be >= 1");
  if (current.predicts_failing(candidate)) return shortcut_decision();

  // Each member's training suite is the actual evidence plus one hypothetical
  // test in the last slot.
  Suite hypothetical(suite.begin(), suite.end());
  hypothetical.emplace_back();

  int votes = 0;
  int abstained = 0;
  for (int member = 0; member < settings.committee_s; ++member) {
    bool voted = false;
    for (int attempt = 0; attempt <= settings.max_redraws && !voted; ++attempt) {
      TestCase neighbor;
      try {
        neighbor = fuzz(candidate, subject, settings.mutation, rng);
      } catch (const SubjectError&) {
        continue;
      }
      if (contains_point(suite, neighbor)) continue;

      hypothetical.back() = LabeledTest{neighbor, Label{Verdict::passing, std::nullopt},
                                        LabelSource::human};
      const LearnedOracle assume_pass = smt_learn(hypothetical, settings.learner);
      hypothetical.back().label.verdict = Verdict::failing;
      const LearnedOracle assume_fail = smt_learn(hypothetical, settings.learner);

      votes += assume_pass.predicts_failing(candidate) ? 1 : 0;
      votes += assume_fail.predicts_failing(candidate) ? 1 : 0;
      voted = true;
    }
    if (!voted) ++abstained;
  }
  return tally_votes(votes, settings.committee_s, abstained);
}

}  // namespace hitl
