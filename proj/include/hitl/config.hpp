#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

namespace hitl {

enum class MutationOp { keep, inc1, dec1, add10, sub10, mul10, div10, random_replace };

struct MutationConfig {
  // Probability of leaving a position untouched; otherwise one of `ops` is
  // drawn uniformly.
  double keep_prob = 0.5;
  std::vector<MutationOp> ops = {MutationOp::inc1,  MutationOp::dec1,  MutationOp::add10,
                                 MutationOp::sub10, MutationOp::mul10, MutationOp::div10,
                                 MutationOp::random_replace};
  std::int64_t random_min = -1000;
  std::int64_t random_max = 1000;
  // div10 truncates toward zero instead of producing a fraction.
  bool integer_only = false;

  void validate() const;
};

struct LearnerBudget {
  std::int64_t max_evaluations = 200'000;
  int max_terms = 4;
  int max_literals = 4;
  int beam_width = 16;
  // Bounds tried for every linear expression besides the observed values.
  std::int64_t small_constant_min = -2;
  std::int64_t small_constant_max = 2;

  void validate() const;
  LearnerBudget scaled(double factor) const;
};

struct SessionConfig {
  int budget_l = 30;
  int committee_s = 10;
  std::chrono::milliseconds loop_timeout{600'000};
  std::uint64_t rng_seed = 0;
  MutationConfig mutation;
  LearnerBudget learner;
  // Committee members learn with this fraction of `learner.max_evaluations`.
  double committee_budget_factor = 0.25;
  // Consecutive subject failures while fuzzing before the session aborts.
  int max_fuzz_failures = 100;

  void validate() const;
};

}  // namespace hitl
