#include "hitl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "hitl/errors.hpp"

namespace hitl {

LinearLiteral::LinearLiteral(std::vector<Rational> coeffs, Rational b,
                             Relation rel)
    : coefficients(std::move(coeffs)), bound(std::move(b)), relation(rel) {
  if (coefficients.size() < 2)
    throw StructuralError("literal needs at least one input and the output slot");
  if (std::all_of(coefficients.begin(), coefficients.end(),
                  [](const Rational& c) { return c.is_zero(); }))
    throw StructuralError("literal has only zero coefficients");
}

bool LinearLiteral::holds(const TestCase& test) const {
  if (test.input.size() + 1 != coefficients.size())
    throw StructuralError("literal over " + std::to_string(arity()) +
                          " inputs evaluated on a test of arity " +
                          std::to_string(test.input.size()));
  auto value = [&](std::size_t i) -> const Rational& {
    return i < test.input.size() ? test.input[i] : test.output;
  };
  auto compare = [&](const auto& lhs, const auto& rhs) {
    switch (relation) {
      case Relation::le: return lhs <= rhs;
      case Relation::lt: return lhs < rhs;
      case Relation::eq: return lhs == rhs;
      case Relation::ne: return lhs != rhs;
    }
    return false;
  };
  // Integer fast path: skip the gcd normalization of rational sums.
  bool integral = is_integer(bound);
  for (std::size_t i = 0; i < coefficients.size() && integral; ++i)
    integral = coefficients[i].is_zero() || (is_integer(coefficients[i]) && is_integer(value(i)));
  if (integral) {
    BigInt lhs = 0;
    for (std::size_t i = 0; i < coefficients.size(); ++i)
      if (!coefficients[i].is_zero())
        lhs += boost::multiprecision::numerator(coefficients[i]) *
               boost::multiprecision::numerator(value(i));
    return compare(lhs, BigInt(boost::multiprecision::numerator(bound)));
  }
  Rational lhs = 0;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (!coefficients[i].is_zero()) lhs += coefficients[i] * value(i);
  return compare(lhs, bound);
}

LraFormula LraFormula::truth(std::size_t arity) { return {arity, true, {}}; }

LraFormula LraFormula::falsity(std::size_t arity) { return {arity, false, {}}; }

LraFormula LraFormula::dnf(std::size_t arity, std::vector<Term> terms) {
  for (const auto& term : terms) {
    if (term.empty()) return truth(arity);
    for (const auto& lit : term)
      if (lit.arity() != arity)
        throw StructuralError("literal arity " + std::to_string(lit.arity()) +
                              " does not match formula arity " +
                              std::to_string(arity));
  }
  return {arity, false, std::move(terms)};
}

std::size_t LraFormula::literal_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : terms_) n += t.size();
  return n;
}

bool evaluate_formula(const LraFormula& formula, const TestCase& test) {
  if (test.arity() != formula.arity())
    throw StructuralError("formula of arity " + std::to_string(formula.arity()) +
                          " evaluated on a test of arity " +
                          std::to_string(test.arity()));
  if (formula.is_true()) return true;
  return std::any_of(formula.terms().begin(), formula.terms().end(),
                     [&](const Term& term) {
                       return std::all_of(term.begin(), term.end(),
                                          [&](const LinearLiteral& lit) {
                                            return lit.holds(test);
                                          });
                     });
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string variable_name(std::size_t index, std::size_t arity) {
  return index == arity ? "o" : "x" + std::to_string(index);
}

std::string scaled_variable(const Rational& c, std::size_t index,
                            std::size_t arity) {
  if (c == 1) return variable_name(index, arity);
  return "(* " + to_string(c) + " " + variable_name(index, arity) + ")";
}

std::string linear_to_text(const std::vector<Rational>& coeffs) {
  const std::size_t arity = coeffs.size() - 1;
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) nonzero.push_back(i);
  if (nonzero.size() == 1) return scaled_variable(coeffs[nonzero[0]], nonzero[0], arity);
  if (nonzero.size() == 2 && coeffs[nonzero[0]] == 1 && coeffs[nonzero[1]] == -1)
    return "(- " + variable_name(nonzero[0], arity) + " " +
           variable_name(nonzero[1], arity) + ")";
  std::string out = "(+";
  for (auto i : nonzero) out += " " + scaled_variable(coeffs[i], i, arity);
  return out + ")";
}

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::le: return "<=";
    case Relation::lt: return "<";
    case Relation::eq: return "=";
    case Relation::ne: return "distinct";
  }
  return "<=";
}

}  // namespace

std::string literal_to_text(const LinearLiteral& literal) {
  std::string out = "(";
  out += relation_symbol(literal.relation);
  out += " " + linear_to_text(literal.coefficients) + " " + to_string(literal.bound) + ")";
  return out;
}

std::string formula_to_text(const LraFormula& formula) {
  if (formula.is_true()) return "(true)";
  if (formula.is_false()) return "(false)";
  auto term_text = [](const Term& term) {
    if (term.size() == 1) return literal_to_text(term.front());
    std::string out = "(and";
    for (const auto& lit : term) out += " " + literal_to_text(lit);
    return out + ")";
  };
  if (formula.terms().size() == 1) return term_text(formula.terms().front());
  std::string out = "(or";
  for (const auto& term : formula.terms()) out += " " + term_text(term);
  return out + ")";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct SExpr {
  std::size_t position = 0;
  std::string atom;             // set for atoms
  std::vector<SExpr> children;  // set for lists
  bool is_list = false;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_top() {
    SExpr e = read();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    SExpr e;
    e.position = pos_;
    if (text_[pos_] == ')') throw ParseError("unexpected ')'", pos_);
    if (text_[pos_] == '(') {
      e.is_list = true;
      ++pos_;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unclosed '('", e.position);
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.children.push_back(read());
      }
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct LinearForm {
  std::vector<Rational> coeffs;
  Rational constant;
};

class Interpreter {
 public:
  explicit Interpreter(std::size_t arity) : arity_(arity) {}

  LraFormula formula(const SExpr& e) {
    if (e.is_list && e.children.size() == 1 && !e.children[0].is_list) {
      if (e.children[0].atom == "true") return LraFormula::truth(arity_);
      if (e.children[0].atom == "false") return LraFormula::falsity(arity_);
    }
    if (head_is(e, "or")) {
      std::vector<Term> terms;
      for (std::size_t i = 1; i < e.children.size(); ++i)
        terms.push_back(term(e.children[i]));
      return LraFormula::dnf(arity_, std::move(terms));
    }
    return LraFormula::dnf(arity_, {term(e)});
  }

 private:
  static bool head_is(const SExpr& e, std::string_view name) {
    return e.is_list && !e.children.empty() && !e.children[0].is_list &&
           e.children[0].atom == name;
  }

  Term term(const SExpr& e) {
    if (head_is(e, "and")) {
      Term t;
      for (std::size_t i = 1; i < e.children.size(); ++i)
        t.push_back(literal(e.children[i]));
      return t;
    }
    return {literal(e)};
  }

  LinearLiteral literal(const SExpr& e) {
    if (!e.is_list || e.children.size() != 3 || e.children[0].is_list)
      throw ParseError("expected (relation lhs rhs)", e.position);
    const std::string& op = e.children[0].atom;
    LinearForm lhs = linear(e.children[1]);
    LinearForm rhs = linear(e.children[2]);
    Relation rel;
    if (op == "<=") rel = Relation::le;
    else if (op == "<") rel = Relation::lt;
    else if (op == "=") rel = Relation::eq;
    else if (op == "distinct") rel = Relation::ne;
    else if (op == ">=" || op == ">") {
      rel = op == ">=" ? Relation::le : Relation::lt;
      std::swap(lhs, rhs);
    } else {
      throw ParseError("unknown relation '" + op + "'", e.children[0].position);
    }
    std::vector<Rational> coeffs(arity_ + 1);
    for (std::size_t i = 0; i <= arity_; ++i) coeffs[i] = lhs.coeffs[i] - rhs.coeffs[i];
    if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c.is_zero(); }))
      throw ParseError("literal mentions no variable", e.position);
    return LinearLiteral(std::move(coeffs), rhs.constant - lhs.constant, rel);
  }

  LinearForm zero() const { return {std::vector<Rational>(arity_ + 1), Rational(0)}; }

  std::optional<std::size_t> variable(const std::string& atom) const {
    if (atom == "o") return arity_;
    if (atom.size() < 2 || atom[0] != 'x') return std::nullopt;
    std::size_t index = 0;
    for (std::size_t i = 1; i < atom.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(atom[i]))) return std::nullopt;
      index = index * 10 + static_cast<std::size_t>(atom[i] - '0');
      if (index > 1'000'000) return std::nullopt;
    }
    // x{arity} would alias the output slot.
    if (index >= arity_) return arity_ + 1;
    return index;
  }

  LinearForm linear(const SExpr& e) {
    LinearForm f = zero();
    if (!e.is_list) {
      if (auto v = variable(e.atom)) {
        if (*v > arity_)
          throw ParseError("variable " + e.atom + " outside arity " + std::to_string(arity_),
                           e.position);
        f.coeffs[*v] = 1;
        return f;
      }
      try {
        f.constant = parse_rational(e.atom);
      } catch (const ParseError&) {
        throw ParseError("unknown symbol '" + e.atom + "'", e.position);
      }
      return f;
    }
    if (e.children.empty() || e.children[0].is_list)
      throw ParseError("expected an operator", e.position);
    const std::string& op = e.children[0].atom;
    const std::size_t argc = e.children.size() - 1;
    if (op == "+") {
      for (std::size_t i = 1; i < e.children.size(); ++i) add(f, linear(e.children[i]), 1);
      return f;
    }
    if (op == "-") {
      if (argc == 0) throw ParseError("'-' needs arguments", e.position);
      if (argc == 1) {
        add(f, linear(e.children[1]), -1);
        return f;
      }
      add(f, linear(e.children[1]), 1);
      for (std::size_t i = 2; i < e.children.size(); ++i) add(f, linear(e.children[i]), -1);
      return f;
    }
    if (op == "*") {
      if (argc != 2) throw ParseError("'*' takes two arguments", e.position);
      LinearForm a = linear(e.children[1]);
      LinearForm b = linear(e.children[2]);
      if (is_constant(a)) {
        add(f, b, a.constant);
      } else if (is_constant(b)) {
        add(f, a, b.constant);
      } else {
        throw ParseError("nonlinear product", e.position);
      }
      return f;
    }
    if (op == "/") {
      if (argc != 2) throw ParseError("'/' takes two arguments", e.position);
      LinearForm a = linear(e.children[1]);
      LinearForm b = linear(e.children[2]);
      if (!is_constant(b) || b.constant == 0)
        throw ParseError("division by a non-constant or zero", e.position);
      add(f, a, Rational(1) / b.constant);
      return f;
    }
    throw ParseError("unknown operator '" + op + "'", e.children[0].position);
  }

  static bool is_constant(const LinearForm& f) {
    return std::all_of(f.coeffs.begin(), f.coeffs.end(),
                       [](const Rational& c) { return c.is_zero(); });
  }

  static void add(LinearForm& into, const LinearForm& f, const Rational& scale) {
    for (std::size_t i = 0; i < into.coeffs.size(); ++i) into.coeffs[i] += scale * f.coeffs[i];
    into.constant += scale * f.constant;
  }

  std::size_t arity_;
};

}  // namespace

LraFormula text_to_formula(std::string_view text, std::size_t arity) {
  if (arity == 0) throw StructuralError("formula arity must be at least 1");
  Reader reader(text);
  SExpr root = reader.read_top();
  try {
    return Interpreter(arity).formula(root);
  } catch (const StructuralError& e) {
    throw ParseError(e.what(), root.position);
  }
}

}  // namespace hitl
