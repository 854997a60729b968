#include <random>

#include <gtest/gtest.h>

#include "hitl/errors.hpp"
#include "hitl/rational.hpp"

using namespace hitl;

TEST(Rational, ParsesIntegersDecimalsAndFractions) {
  EXPECT_EQ(parse_rational("-12"), Rational(-12));
  EXPECT_EQ(parse_rational("+7"), Rational(7));
  EXPECT_EQ(parse_rational("3.25"), Rational(13, 4));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("-7/4"), Rational(-7, 4));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
}

TEST(Rational, RejectsGarbage) {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "--1", "1e5", "2/", " 3"})
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(Rational, PrintsTerminatingDecimalsAsDecimals) {
  EXPECT_EQ(to_string(Rational(-13)), "-13");
  EXPECT_EQ(to_string(Rational(1, 5)), "0.2");
  EXPECT_EQ(to_string(Rational(-3, 8)), "-0.375");
  EXPECT_EQ(to_string(Rational(1, 3)), "1/3");
  EXPECT_EQ(to_string(Rational(-22, 6)), "-11/3");
}

TEST(Rational, PrintParseRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> num(-100000, 100000), den(1, 5000);
  for (int i = 0; i < 2000; ++i) {
    const Rational x(num(rng), den(rng));
    EXPECT_EQ(parse_rational(to_string(x)), x);
  }
}

TEST(Rational, LessAgreesWithOperatorLess) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> num(-50, 50), den(1, 9);
  for (int i = 0; i < 5000; ++i) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    EXPECT_EQ(rational_less(a, b), a < b) << a << " " << b;
  }
}

TEST(Rational, TruncatesTowardZero) {
  EXPECT_EQ(trunc_toward_zero(Rational(7, 2)), Rational(3));
  EXPECT_EQ(trunc_toward_zero(Rational(-7, 2)), Rational(-3));
  EXPECT_EQ(trunc_toward_zero(Rational(4)), Rational(4));
  EXPECT_TRUE(is_integer(Rational(-4)));
  EXPECT_FALSE(is_integer(Rational(1, 2)));
}
