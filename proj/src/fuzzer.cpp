#include "hitl/fuzzer.hpp"

#include <array>
#include <string>

#include "hitl/errors.hpp"

namespace hitl {

namespace {

constexpr std::array<std::pair<MutationOp, std::string_view>, 8> kOpNames{{
    {MutationOp::keep, "keep"},
    {MutationOp::inc1, "inc1"},
    {MutationOp::dec1, "dec1"},
    {MutationOp::add10, "add10"},
    {MutationOp::sub10, "sub10"},
    {MutationOp::mul10, "mul10"},
    {MutationOp::div10, "div10"},
    {MutationOp::random_replace, "random-replace"},
}};

}  // namespace

std::string_view to_string(MutationOp op) {
  for (const auto& [o, name] : kOpNames)
    if (o == op) return name;
  return "keep";
}

MutationOp parse_mutation_op(std::string_view text) {
  for (const auto& [o, name] : kOpNames)
    if (name == text) return o;
  throw ParseError("unknown mutation operator '" + std::string(text) + "'", 0);
}

Rational apply_mutation(MutationOp op, const Rational& value, const MutationConfig& config,
                        Rng& rng) {
  switch (op) {
    case MutationOp::keep: return value;
    case MutationOp::inc1: return value + 1;
    case MutationOp::dec1: return value - 1;
    case MutationOp::add10: return value + 10;
    case MutationOp::sub10: return value - 10;
    case MutationOp::mul10: return value * 10;
    case MutationOp::div10: {
      Rational q = value / 10;
      return config.integer_only ? trunc_toward_zero(q) : q;
    }
    case MutationOp::random_replace: {
      std::uniform_int_distribution<std::int64_t> dist(config.random_min, config.random_max);
      return Rational(dist(rng));
    }
  }
  return value;
}

MutationOp draw_mutation(const MutationConfig& config, Rng& rng) {
  if (config.ops.empty() || std::bernoulli_distribution(config.keep_prob)(rng))
    return MutationOp::keep;
  std::uniform_int_distribution<std::size_t> pick(0, config.ops.size() - 1);
  return config.ops[pick(rng)];
}

InputVector mutate_input(std::span<const Rational> input, const MutationConfig& config,
                         Rng& rng) {
  InputVector out;
  out.reserve(input.size());
  for (const auto& v : input) {
    const MutationOp op = draw_mutation(config, rng);
    out.push_back(apply_mutation(op, v, config, rng));
  }
  return out;
}

std::size_t select_index(std::span<const LabeledTest> failing, Rng& rng) {
  if (failing.empty()) throw StructuralError("select() needs at least one failing test");
  std::uniform_int_distribution<std::size_t> pick(0, failing.size() - 1);
  const std::size_t index = pick(rng);
  if (!failing[index].failing()) throw StructuralError("select() was given a passing test");
  return index;
}

const TestCase& select(std::span<const LabeledTest> failing, Rng& rng) {
  return failing[select_index(failing, rng)].test;
}

TestCase fuzz(const TestCase& seed, const Subject& subject, const MutationConfig& config,
              Rng& rng) {
  if (seed.arity() != subject.arity())
    throw StructuralError("seed arity " + std::to_string(seed.arity()) +
                          " does not match subject arity " + std::to_string(subject.arity()));
  MutationConfig effective = config;
  effective.integer_only = config.integer_only || subject.integer_only();
  return run_subject(subject, mutate_input(seed.input, effective, rng));
}

}  // namespace hitl
