#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hitl/model.hpp"
#include "hitl/rational.hpp"

namespace hitl {

enum class Relation { le, lt, eq, ne };

// sum_i coefficients[i] * v[i]  <relation>  bound, where v = input ++ [output].
// coefficients.size() is arity + 1; the last slot belongs to the output `o`.
struct LinearLiteral {
  std::vector<Rational> coefficients;
  Rational bound;
  Relation relation = Relation::le;

  LinearLiteral() = default;
  LinearLiteral(std::vector<Rational> coefficients, Rational bound,
                Relation relation);

  std::size_t arity() const noexcept { return coefficients.size() - 1; }
  bool holds(const TestCase& test) const;

  friend bool operator==(const LinearLiteral&, const LinearLiteral&) = default;
};

using Term = std::vector<LinearLiteral>;

// Disjunction of conjunctions. TRUE and FALSE are explicit constants; a DNF
// containing an empty conjunction normalizes to TRUE.
class LraFormula {
 public:
  static LraFormula truth(std::size_t arity);
  static LraFormula falsity(std::size_t arity);
  static LraFormula dnf(std::size_t arity, std::vector<Term> terms);

  std::size_t arity() const noexcept { return arity_; }
  bool is_true() const noexcept { return tautology_; }
  bool is_false() const noexcept { return !tautology_ && terms_.empty(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t literal_count() const noexcept;

  friend bool operator==(const LraFormula&, const LraFormula&) = default;

 private:
  LraFormula(std::size_t arity, bool tautology, std::vector<Term> terms)
      : arity_(arity), tautology_(tautology), terms_(std::move(terms)) {}

  std::size_t arity_ = 0;
  bool tautology_ = false;
  std::vector<Term> terms_;
};

// Throws StructuralError when the test's arity differs from the formula's.
bool evaluate_formula(const LraFormula& formula, const TestCase& test);

inline Verdict predict(const LraFormula& formula, const TestCase& test) {
  return evaluate_formula(formula, test) ? Verdict::failing : Verdict::passing;
}

std::string literal_to_text(const LinearLiteral& literal);
std::string formula_to_text(const LraFormula& formula);

// Parses the S-expression format; variable indices must be below `arity`.
// Besides the canonical relations (<=, <, =, distinct) it accepts >= and >.
LraFormula text_to_formula(std::string_view text, std::size_t arity);

}  // namespace hitl
