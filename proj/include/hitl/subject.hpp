#pragma once

#include <chrono>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hitl/model.hpp"

namespace hitl {

using BuiltinFunction = std::function<Rational(std::span<const Rational>)>;

// A deterministic numeric program: either an in-process builtin or an external
// command that reads one line of space-separated numbers on stdin and prints
// one number on stdout.
class Subject {
 public:
  enum class Kind { builtin, external };

  static Subject builtin(std::string_view name);
  static Subject external(std::string command, std::size_t arity,
                          std::chrono::milliseconds timeout = std::chrono::seconds(5));
  // "builtin:NAME" or a shell command. `arity` is required for commands and,
  // when nonzero, must agree with a builtin's declared arity.
  static Subject from_spec(std::string_view spec, std::size_t arity = 0);
  // Ad-hoc in-process subject (tests, adapters).
  static Subject function(std::string name, std::size_t arity, BuiltinFunction fn,
                          bool integer_only = false);

  Kind kind() const noexcept { return kind_; }
  std::size_t arity() const noexcept { return arity_; }
  bool integer_only() const noexcept { return integer_only_; }
  std::chrono::milliseconds timeout() const noexcept { return timeout_; }
  // Round-trips through from_spec for builtins and commands.
  const std::string& spec() const noexcept { return spec_; }

  Rational execute(std::span<const Rational> input) const;

 private:
  Subject() = default;

  Kind kind_ = Kind::builtin;
  std::size_t arity_ = 0;
  bool integer_only_ = false;
  std::chrono::milliseconds timeout_{5000};
  std::string spec_;
  BuiltinFunction fn_;
  std::string command_;
};

struct BuiltinInfo {
  std::string name;
  std::size_t arity;
  // Failure condition of the buggy member of a pair, in formula text, or
  // empty for golden/patch variants.
  std::string failure_constraint;
  std::string description;
};

const std::vector<BuiltinInfo>& builtin_catalog();

// Throws SubjectCrash, SubjectTimeout or OutputFormatError; StructuralError
// on an arity mismatch.
TestCase run_subject(const Subject& subject, std::span<const Rational> input);

// Labels by comparing against a golden version.
class SimulatedHumanOracle {
 public:
  explicit SimulatedHumanOracle(Subject golden) : golden_(std::move(golden)) {}

  const Subject& golden() const noexcept { return golden_; }

  // Throws OracleUnavailable if the golden version crashes or times out.
  LabeledTest label(const TestCase& test) const;

 private:
  Subject golden_;
};

}  // namespace hitl
