#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "hitl/config.hpp"
#include "hitl/errors.hpp"
#include "hitl/formula.hpp"
#include "hitl/model.hpp"

namespace hitl {

// Raised when one point carries both verdicts; the learner assumes correct labels.
class ContradictionError : public Error {
 public:
  explicit ContradictionError(TestCase point);

  const TestCase& point() const noexcept { return point_; }

 private:
  TestCase point_;
};

enum class Provenance { trivial_true, searched, memorized_fallback };

std::string_view to_string(Provenance provenance);
Provenance parse_provenance(std::string_view text);

// A formula together with the proof obligation that it separates the suite it
// was trained on: satisfied by every failing test and by no passing test.
class LearnedOracle {
 public:
  // Throws std::logic_error if `formula` is not consistent with `suite`.
  static LearnedOracle checked(LraFormula formula, std::span<const LabeledTest> suite,
                               Provenance provenance);

  const LraFormula& formula() const noexcept { return formula_; }
  std::size_t consistent_with() const noexcept { return consistent_with_; }
  Provenance provenance() const noexcept { return provenance_; }

  bool predicts_failing(const TestCase& test) const { return evaluate_formula(formula_, test); }

 private:
  LearnedOracle(LraFormula formula, std::size_t n, Provenance p)
      : formula_(std::move(formula)), consistent_with_(n), provenance_(p) {}

  LraFormula formula_;
  std::size_t consistent_with_;
  Provenance provenance_;
};

bool is_consistent(const LraFormula& formula, std::span<const LabeledTest> suite);

// Learns a DNF over linear literals that separates failing from passing tests.
// Prefers fewer terms, then fewer literals, then smaller coefficient
// magnitudes; falls back to memorizing the failing points when the search
// budget runs out, so the result is always consistent.
//
// Throws StructuralError for an empty suite, mixed arities or no failing test,
// and ContradictionError for a point labeled both ways.
LearnedOracle smt_learn(std::span<const LabeledTest> suite, const LearnerBudget& budget = {});

// One pinning conjunction (x_i = v_i for every input, o = v_o) per failing point.
LraFormula memorize_fallback(std::span<const LabeledTest> suite);

}  // namespace hitl
