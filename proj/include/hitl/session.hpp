#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <string_view>
#include <vector>

#include "hitl/committee.hpp"
#include "hitl/config.hpp"
#include "hitl/learner.hpp"
#include "hitl/model.hpp"
#include "hitl/subject.hpp"

namespace hitl {

using Clock = std::chrono::steady_clock;

// The human in the loop. query() blocks until the human answers or the
// deadline passes; std::nullopt means no answer (the query is dropped and
// does not count as a label).
class HumanOracle {
 public:
  virtual ~HumanOracle() = default;

  // Confirms the reported failing test. Throws OracleUnavailable if the human
  // cannot answer; a passing answer aborts the session.
  virtual Label confirm_seed(const TestCase& seed, Clock::time_point deadline) = 0;
  virtual std::optional<Label> query(const TestCase& test, Clock::time_point deadline) = 0;
  virtual LabelSource source() const = 0;
};

class SimulatedHuman final : public HumanOracle {
 public:
  explicit SimulatedHuman(Subject golden) : oracle_(std::move(golden)) {}

  Label confirm_seed(const TestCase& seed, Clock::time_point deadline) override;
  std::optional<Label> query(const TestCase& test, Clock::time_point deadline) override;
  LabelSource source() const override { return LabelSource::simulated_golden; }

  int queries() const noexcept { return queries_; }

 private:
  SimulatedHumanOracle oracle_;
  int queries_ = 0;
};

// One generated test (or the seed, iter 0) and what happened to it.
struct SessionEvent {
  int iter = 0;
  // Event whose test was mutated to produce this one; absent for the seed.
  std::optional<int> parent;
  TestCase test;
  std::optional<CommitteeDecision> decision;
  std::optional<Label> label;
  // Decided to label, but the human gave no answer.
  bool unanswered = false;
  // Ground-truth verdict, recorded only when a golden version is available.
  std::optional<Verdict> truth;

  bool is_seed() const noexcept { return iter == 0; }
};

class SessionObserver {
 public:
  virtual ~SessionObserver() = default;
  virtual void on_event(const SessionEvent&) {}
  virtual void on_oracle(const LearnedOracle&, const Suite&) {}
};

enum class Termination { budget, timeout, interrupted };

std::string_view to_string(Termination termination);

struct SessionResult {
  Suite suite;
  LearnedOracle oracle;
  int generated = 0;
  int decided_to_label = 0;
  int human_labeled = 0;
  int labeled_failing = 0;
  // Generated tests dropped because their point was already labeled.
  int duplicates_skipped = 0;
  Termination termination = Termination::budget;
  std::vector<SessionEvent> events{};
  std::chrono::milliseconds elapsed{0};
};

struct SessionOptions {
  // Golden version used only to annotate events with the true verdict.
  std::optional<Subject> ground_truth;
  SessionObserver* observer = nullptr;
  // Checked once per iteration; when set the session stops with
  // Termination::interrupted and returns what it has so far.
  const std::atomic<bool>* cancel = nullptr;
};

// Runs the active oracle learning loop until |T| reaches budget_l or the
// loop timeout expires.
SessionResult run_session(const SessionConfig& config, const Subject& subject,
                          const InputVector& seed_input, HumanOracle& human,
                          const SessionOptions& options = {});

}  // namespace hitl
