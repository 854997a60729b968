#include "hitl/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hitl/errors.hpp"

namespace hitl {

void MutationConfig::validate() const {
  if (!(keep_prob >= 0.0 && keep_prob <= 1.0))
    throw StructuralError("mutation.keep_prob must lie in [0, 1]");
  if (keep_prob < 1.0 && ops.empty())
    throw StructuralError("mutation needs at least one operator besides keep");
  if (std::find(ops.begin(), ops.end(), MutationOp::keep) != ops.end())
    throw StructuralError("keep is controlled by mutation.keep_prob, not the op list");
  if (random_min > random_max) throw StructuralError("mutation.random_range is empty");
}

void LearnerBudget::validate() const {
  if (max_evaluations < 1 || max_terms < 1 || max_literals < 1 || beam_width < 1)
    throw StructuralError("learner limits must all be >= 1");
  if (small_constant_min > small_constant_max)
    throw StructuralError("learner small-constant range is empty");
}

LearnerBudget LearnerBudget::scaled(double factor) const {
  LearnerBudget b = *this;
  b.max_evaluations = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::llround(static_cast<double>(max_evaluations) * factor)));
  return b;
}

void SessionConfig::validate() const {
  if (budget_l < 1) throw StructuralError("budget_l must be >= 1");
  if (committee_s < 1) throw StructuralError("committee_S must be >= 1");
  if (loop_timeout.count() < 0) throw StructuralError("loop_timeout must not be negative");
  if (!(committee_budget_factor > 0.0)) throw StructuralError("committee budget factor must be > 0");
  if (max_fuzz_failures < 1) throw StructuralError("max_fuzz_failures must be >= 1");
  mutation.validate();
  learner.validate();
}

}  // namespace hitl
