#include "hitl/rational.hpp"

#include <cctype>

#include "hitl/errors.hpp"

namespace hitl {

namespace {

BigInt parse_digits(std::string_view digits, std::size_t offset) {
  if (digits.empty()) throw ParseError("expected digits", offset);
  BigInt value = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char c = digits[i];
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(std::string("unexpected character '") + c + "'",
                       offset + i);
    value = value * 10 + (c - '0');
  }
  return value;
}

BigInt pow10(std::size_t k) {
  BigInt p = 1;
  for (std::size_t i = 0; i < k; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  const std::string_view body = text.substr(pos);
  Rational result;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_digits(body.substr(0, slash), pos);
    const BigInt den = parse_digits(body.substr(slash + 1), pos + slash + 1);
    if (den == 0) throw ParseError("zero denominator", pos + slash + 1);
    result = Rational(num, den);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw ParseError("expected digits", pos);
    const BigInt w = whole.empty() ? BigInt(0) : parse_digits(whole, pos);
    const BigInt f = frac.empty() ? BigInt(0) : parse_digits(frac, pos + dot + 1);
    const BigInt scale = pow10(frac.size());
    result = Rational(w * scale + f, scale);
  } else {
    result = Rational(parse_digits(body, pos));
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();

  BigInt rest = den;
  std::size_t twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();

  const std::size_t digits = std::max(twos, fives);
  const BigInt scaled = boost::multiprecision::abs(num) * pow10(digits) / den;
  std::string s = scaled.str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (num < 0 ? "-" : "") + s;
}

bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

bool rational_less(const Rational& a, const Rational& b) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const BigInt& da = denominator(a);
  const BigInt& db = denominator(b);
  if (da == 1 && db == 1) return numerator(a) < numerator(b);
  return numerator(a) * db < numerator(b) * da;
}

Rational trunc_toward_zero(const Rational& value) {
  // cpp_int division truncates toward zero.
  return Rational(boost::multiprecision::numerator(value) /
                  boost::multiprecision::denominator(value));
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace hitl
