#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "hitl/config.hpp"
#include "hitl/model.hpp"
#include "hitl/subject.hpp"

namespace hitl {

// Session-owned generator; same seed, same stream.
using Rng = std::mt19937_64;

std::string_view to_string(MutationOp op);
MutationOp parse_mutation_op(std::string_view text);

Rational apply_mutation(MutationOp op, const Rational& value, const MutationConfig& config,
                        Rng& rng);

MutationOp draw_mutation(const MutationConfig& config, Rng& rng);

// One independently drawn operator per position.
InputVector mutate_input(std::span<const Rational> input, const MutationConfig& config,
                         Rng& rng);

// Uniform choice among `failing`, which must be nonempty and all failing.
std::size_t select_index(std::span<const LabeledTest> failing, Rng& rng);
const TestCase& select(std::span<const LabeledTest> failing, Rng& rng);

// Mutates the seed's input and executes the subject on the result. Subject
// errors propagate; the output is always freshly computed.
TestCase fuzz(const TestCase& seed, const Subject& subject, const MutationConfig& config,
              Rng& rng);

}  // namespace hitl
