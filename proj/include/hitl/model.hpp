#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hitl/rational.hpp"

namespace hitl {

// Fixed-arity program input. Variables are named positionally: x0..x{n-1}.
using InputVector = std::vector<Rational>;

InputVector parse_input(std::string_view line);
std::string input_to_string(std::span<const Rational> input);

// An input paired with the *actual* output the subject produced for it.
struct TestCase {
  InputVector input;
  Rational output;

  std::size_t arity() const noexcept { return input.size(); }

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

// Strict weak order over points, for use as a map key.
bool point_less(const TestCase& a, const TestCase& b);

struct PointLess {
  bool operator()(const TestCase& a, const TestCase& b) const {
    return point_less(a, b);
  }
};

enum class Verdict { passing, failing };

std::string_view to_string(Verdict verdict);
// Accepts "pass"/"fail" as well as "passing"/"failing".
Verdict parse_verdict(std::string_view text);

struct Label {
  Verdict verdict = Verdict::failing;
  std::optional<Rational> expected_output;

  // Validates the expected-output invariants against the actual output:
  // a failing label must not expect the actual output, a passing one must.
  // A passing label without an expected value gets the actual output.
  static Label checked(const TestCase& test, Verdict verdict,
                       std::optional<Rational> expected = std::nullopt);

  friend bool operator==(const Label&, const Label&) = default;
};

enum class LabelSource { seed, human, simulated_golden };

std::string_view to_string(LabelSource source);
LabelSource parse_label_source(std::string_view text);

struct LabeledTest {
  TestCase test;
  Label label;
  LabelSource source = LabelSource::human;

  bool failing() const noexcept { return label.verdict == Verdict::failing; }

  friend bool operator==(const LabeledTest&, const LabeledTest&) = default;
};

using Suite = std::vector<LabeledTest>;

// Returns the first point that carries both verdicts, if any.
std::optional<TestCase> find_contradiction(std::span<const LabeledTest> suite);

bool contains_point(std::span<const LabeledTest> suite, const TestCase& test);

}  // namespace hitl
