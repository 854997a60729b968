#include "hitl/session.hpp"

#include "hitl/errors.hpp"
#include "hitl/fuzzer.hpp"

namespace hitl {

Label SimulatedHuman::confirm_seed(const TestCase& seed, Clock::time_point) {
  return oracle_.label(seed).label;
}

std::optional<Label> SimulatedHuman::query(const TestCase& test, Clock::time_point) {
  ++queries_;
  try {
    return oracle_.label(test).label;
  } catch (const OracleUnavailable&) {
    return std::nullopt;
  }
}

std::string_view to_string(Termination termination) {
  switch (termination) {
    case Termination::budget: return "budget";
    case Termination::timeout: return "timeout";
    case Termination::interrupted: return "interrupted";
  }
  return "budget";
}

SessionResult run_session(const SessionConfig& config, const Subject& subject,
                          const InputVector& seed_input, HumanOracle& human,
                          const SessionOptions& options) {
  config.validate();
  if (seed_input.size() != subject.arity())
    throw StructuralError("seed input has " + std::to_string(seed_input.size()) +
                          " values but the subject takes " + std::to_string(subject.arity()));

  const auto start = Clock::now();
  const auto deadline = start + config.loop_timeout;
  auto timed_out = [&] { return Clock::now() >= deadline; };
  auto cancelled = [&] { return options.cancel && options.cancel->load(); };

  std::optional<SimulatedHumanOracle> truth_oracle;
  if (options.ground_truth) truth_oracle.emplace(*options.ground_truth);
  auto truth_of = [&](const TestCase& t) -> std::optional<Verdict> {
    if (!truth_oracle) return std::nullopt;
    try {
      return truth_oracle->label(t).label.verdict;
    } catch (const OracleUnavailable&) {
      return std::nullopt;
    }
  };
  auto notify = [&](const SessionEvent& e) {
    if (options.observer) options.observer->on_event(e);
  };

  Rng rng(config.rng_seed);
  const TestCase seed = run_subject(subject, seed_input);
  const Label seed_label = human.confirm_seed(seed, deadline);
  if (seed_label.verdict != Verdict::failing)
    throw SeedNotFailing("the human labeled the seed (" + input_to_string(seed.input) +
                         ") -> " + to_string(seed.output) + " as passing");

  Suite suite{LabeledTest{seed, seed_label, LabelSource::seed}};
  Suite failing = suite;
  // Event iter of every labeled failing point, for provenance.
  std::vector<int> failing_iters{0};
  LearnedOracle oracle = smt_learn(suite, config.learner);

  SessionResult result{.suite = suite, .oracle = oracle};
  {
    SessionEvent e;
    e.test = seed;
    e.label = seed_label;
    e.truth = truth_of(seed);
    result.events.push_back(e);
    notify(e);
  }
  if (options.observer) options.observer->on_oracle(oracle, suite);

  CommitteeSettings committee{config.committee_s, config.mutation,
                              config.learner.scaled(config.committee_budget_factor)};
  int fuzz_failures = 0;
  int iter = 0;

  result.termination = Termination::budget;
  while (static_cast<int>(suite.size()) < config.budget_l) {
    if (cancelled()) {
      result.termination = Termination::interrupted;
      break;
    }
    if (timed_out()) {
      result.termination = Termination::timeout;
      break;
    }
    const std::size_t parent_index = select_index(failing, rng);
    const TestCase& parent = failing[parent_index].test;

    TestCase candidate;
    try {
      candidate = fuzz(parent, subject, config.mutation, rng);
      fuzz_failures = 0;
    } catch (const SubjectError& err) {
      if (++fuzz_failures >= config.max_fuzz_failures)
        throw SessionAborted(std::string("subject keeps failing: ") + err.what());
      continue;
    }
    if (contains_point(suite, candidate)) {
      ++result.duplicates_skipped;
      continue;
    }

    SessionEvent event;
    event.iter = ++iter;
    event.parent = failing_iters[parent_index];
    event.test = candidate;
    event.truth = truth_of(candidate);
    ++result.generated;

    const CommitteeDecision decision =
        decide2label(candidate, oracle, suite, subject, committee, rng);
    event.decision = decision;

    bool stop_for_timeout = false;
    if (decision.send_to_human) {
      ++result.decided_to_label;
      if (timed_out()) {
        event.unanswered = true;
        stop_for_timeout = true;
      } else if (auto label = human.query(candidate, deadline)) {
        event.label = *label;
        suite.push_back(LabeledTest{candidate, *label, human.source()});
        ++result.human_labeled;
        if (label->verdict == Verdict::failing) {
          ++result.labeled_failing;
          failing.push_back(suite.back());
          failing_iters.push_back(event.iter);
        }
        oracle = smt_learn(suite, config.learner);
        if (options.observer) options.observer->on_oracle(oracle, suite);
      } else {
        event.unanswered = true;
        stop_for_timeout = timed_out() && !cancelled();
      }
    }
    result.events.push_back(event);
    notify(event);
    if (stop_for_timeout) {
      result.termination = Termination::timeout;
      break;
    }
  }

  result.suite = std::move(suite);
  result.oracle = std::move(oracle);
  result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return result;
}

}  // namespace hitl
