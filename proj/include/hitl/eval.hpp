#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hitl/config.hpp"
#include "hitl/formula.hpp"
#include "hitl/model.hpp"
#include "hitl/session.hpp"
#include "hitl/subject.hpp"

namespace hitl {

// Tests whose verdicts come from a golden version (or an imported labeled
// suite). Oracles are evaluated on (input, buggy output).
using ValidationSuite = Suite;

// Every integer input in [lo, hi]^n, run on `buggy` and labeled by `golden`.
// `exclude` (typically the seed input) is left out.
ValidationSuite grid_validation_suite(const Subject& buggy, const Subject& golden,
                                      std::int64_t lo, std::int64_t hi,
                                      const std::optional<InputVector>& exclude = std::nullopt);

// Throws StructuralError if `suite` is empty.
Rational prediction_accuracy(const LraFormula& oracle, std::span<const LabeledTest> suite);
// Accuracy on the failing subset only; throws StructuralError if there is none.
Rational conditional_accuracy(const LraFormula& oracle, std::span<const LabeledTest> suite);

struct EffortMetrics {
  int generated = 0;
  int labeled = 0;
  int labeled_failing = 0;
  int shortcut_sent = 0;
  int committee_sent = 0;
  // Present when every generated event carries a ground-truth verdict.
  std::optional<int> generated_failing;

  std::optional<Rational> p_labeled;
  std::optional<Rational> p_label_failing;
  std::optional<Rational> p_generate_failing;
};

// Seed events are excluded from every count.
EffortMetrics effort_metrics(std::span<const SessionEvent> events);

// Share of the suite's inputs on which `patched` agrees with `golden`. A crash
// or timeout of the patched program fails that test.
Rational validation_score(const Subject& patched, std::span<const LabeledTest> suite,
                          const Subject& golden);

struct ExperimentSubject {
  std::string name;
  Subject buggy;
  Subject golden;
  InputVector seed;
  ValidationSuite validation;
};

// "triangle", "threshold" or "absdiff", with their default grids.
ExperimentSubject builtin_experiment(std::string_view name);

struct ExperimentPlan {
  std::vector<ExperimentSubject> subjects;
  std::vector<int> l_values{10, 20, 30};
  int repetitions = 30;
  std::uint64_t base_seed = 1;
  SessionConfig session;
  // When false, wall_ms is written as 0 so that the CSV is reproducible.
  bool record_wall_time = true;
  unsigned jobs = 1;
};

struct RunReport {
  std::string subject;
  int l = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  std::string status;  // "budget", "timeout" or "error: ..."
  std::optional<Rational> accuracy;
  std::optional<Rational> conditional_accuracy;
  EffortMetrics effort;
  std::int64_t wall_ms = 0;

  bool ok() const { return status == "budget" || status == "timeout"; }
};

using ProgressFn = std::function<void(const RunReport&)>;

// One session per (subject, l, repetition); seed = base_seed + rep. Rows come
// back sorted by (subject, l, rep); failed sessions become error rows.
std::vector<RunReport> run_experiment(const ExperimentPlan& plan, const ProgressFn& progress = {});

std::string runs_csv(std::span<const RunReport> reports);
std::string summary_csv(std::span<const RunReport> reports);

double median(std::vector<double> values);

}  // namespace hitl
