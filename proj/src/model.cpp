#include "hitl/model.hpp"

#include <algorithm>
#include <map>

#include "hitl/errors.hpp"

namespace hitl {

InputVector parse_input(std::string_view line) {
  InputVector values;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
      ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])))
      ++end;
    try {
      values.push_back(parse_rational(line.substr(pos, end - pos)));
    } catch (const ParseError& e) {
      throw ParseError("bad input value '" + std::string(line.substr(pos, end - pos)) + "'",
                       pos);
    }
    pos = end;
  }
  if (values.empty()) throw ParseError("empty input vector", 0);
  return values;
}

std::string input_to_string(std::span<const Rational> input) {
  std::string out;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (i) out += ' ';
    out += to_string(input[i]);
  }
  return out;
}

bool point_less(const TestCase& a, const TestCase& b) {
  if (a.input.size() != b.input.size()) return a.input.size() < b.input.size();
  for (std::size_t i = 0; i < a.input.size(); ++i) {
    if (rational_less(a.input[i], b.input[i])) return true;
    if (rational_less(b.input[i], a.input[i])) return false;
  }
  return rational_less(a.output, b.output);
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::failing ? "fail" : "pass";
}

Verdict parse_verdict(std::string_view text) {
  if (text == "fail" || text == "failing") return Verdict::failing;
  if (text == "pass" || text == "passing") return Verdict::passing;
  throw ParseError("unknown verdict '" + std::string(text) + "'", 0);
}

Label Label::checked(const TestCase& test, Verdict verdict,
                     std::optional<Rational> expected) {
  if (expected) {
    const bool same = *expected == test.output;
    if (verdict == Verdict::failing && same)
      throw StructuralError("failing label expects the actual output " +
                            to_string(test.output));
    if (verdict == Verdict::passing && !same)
      throw StructuralError("passing label expects " + to_string(*expected) +
                            " but the actual output is " + to_string(test.output));
  } else if (verdict == Verdict::passing) {
    // A passing verdict confirms the actual output.
    expected = test.output;
  }
  return Label{verdict, std::move(expected)};
}

std::string_view to_string(LabelSource source) {
  switch (source) {
    case LabelSource::seed: return "seed";
    case LabelSource::human: return "human";
    case LabelSource::simulated_golden: return "simulated-golden";
  }
  return "human";
}

LabelSource parse_label_source(std::string_view text) {
  if (text == "seed") return LabelSource::seed;
  if (text == "human") return LabelSource::human;
  if (text == "simulated-golden") return LabelSource::simulated_golden;
  throw ParseError("unknown label source '" + std::string(text) + "'", 0);
}

std::optional<TestCase> find_contradiction(std::span<const LabeledTest> suite) {
  std::map<TestCase, Verdict, PointLess> seen;
  for (const auto& t : suite) {
    auto [it, inserted] = seen.emplace(t.test, t.label.verdict);
    if (!inserted && it->second != t.label.verdict) return t.test;
  }
  return std::nullopt;
}

bool contains_point(std::span<const LabeledTest> suite, const TestCase& test) {
  return std::any_of(suite.begin(), suite.end(),
                     [&](const LabeledTest& t) { return t.test == test; });
}

}  // namespace hitl
