#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hitl {

// Exact arbitrary-precision rational. All program inputs, outputs and formula
// coefficients use it; nothing in the oracle path touches binary floats.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "-12", "3.25", "-7/4" (and "+" signs). Throws ParseError.
Rational parse_rational(std::string_view text);

// Terminating decimals print as decimals ("0.2", "-13"), everything else as
// "p/q". parse_rational(to_string(x)) == x for every x.
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

// Same order as operator< but cross-multiplies instead of going through the
// continued-fraction comparison; much cheaper for small integers.
bool rational_less(const Rational& a, const Rational& b);

Rational trunc_toward_zero(const Rational& value);

// Lossy; for human-facing summaries only.
double to_double(const Rational& value);

}  // namespace hitl
