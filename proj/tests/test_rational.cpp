#include "adm/rational.hpp"
#include "adm/polynomial.hpp"

#include <gtest/gtest.h>

#include <sstream>

using adm::Polynomial;
using adm::Rational;

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(Rational::parse("4/6")->str(), "2/3");
  EXPECT_EQ(Rational::parse("-3")->str(), "-3");
  EXPECT_EQ(Rational::parse("10/5")->str(), "2");
  EXPECT_EQ(Rational::parse("-0")->str(), "0");
  EXPECT_EQ(Rational::parse("-6/4")->str(), "-3/2");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "1/-2", "x", "1/", "/2", "+1", "1.5", "1//2", "--1", " 1"})
    EXPECT_FALSE(Rational::parse(bad)) << bad;
}

TEST(Rational, ArithmeticIsExact) {
  Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(-2, 3) * Rational(9, 4), Rational(-3, 2));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_THROW((void)(Rational(1) / Rational(0)), std::domain_error);
  EXPECT_LT(Rational(-1, 2), Rational(1, 3));
  EXPECT_EQ(Rational(7, 2).sign(), 1);
  EXPECT_EQ(Rational(-7, 2).sign(), -1);
  EXPECT_TRUE(Rational(0).is_zero());
  EXPECT_TRUE(Rational(6, 3).is_integer());
  EXPECT_DOUBLE_EQ(Rational(1, 8).to_double(), 0.125);
}

TEST(Rational, LargeValuesStayExact) {
  auto f = adm::factorial(30);
  EXPECT_EQ(f.str(), "265252859812191058636308480000000");
  EXPECT_EQ(f / adm::factorial(29), Rational(30));
}

TEST(Rational, StreamsCanonicalForm) {
  std::ostringstream os;
  os << Rational(10, -4);
  EXPECT_EQ(os.str(), "-5/2");
}

TEST(Polynomial, CalculusRoundTrip) {
  Polynomial p({Rational(1), Rational(-2), Rational(3)});  // 3x² − 2x + 1
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(Rational(2)), Rational(9));
  EXPECT_EQ(p.integral().derivative(), p);
  EXPECT_EQ(p.derivative(), Polynomial({Rational(-2), Rational(6)}));
  EXPECT_EQ(p.integral()(Rational(0)), Rational(0));
}

TEST(Polynomial, ProductOfLinearFactors) {
  auto p = Polynomial::linear(Rational(1)) * Polynomial::linear(Rational(-1));
  EXPECT_EQ(p, Polynomial({Rational(-1), Rational(0), Rational(1)}));
  EXPECT_TRUE((Rational(0) * p).is_zero());
  EXPECT_EQ(Polynomial::monomial(3).leading(), Rational(1));
}
