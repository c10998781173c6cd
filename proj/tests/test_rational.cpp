#include <gtest/gtest.h>

#include <sstream>

#include "crossmod/rational.hpp"

using crossmod::BigInt;
using crossmod::ExactRational;

TEST(Rational, ReducesAndKeepsPositiveDenominator) {
  const ExactRational r(BigInt(12), BigInt(9));
  EXPECT_EQ(r.numerator(), 4);
  EXPECT_EQ(r.denominator(), 3);
  const ExactRational n(BigInt(3), BigInt(-6));
  EXPECT_EQ(n.numerator(), -1);
  EXPECT_EQ(n.denominator(), 2);
}

TEST(Rational, IntegersPrintWithUnitDenominator) {
  EXPECT_EQ(ExactRational(BigInt(18)).to_string(), "18/1");
  EXPECT_TRUE(ExactRational(BigInt(18)).is_integer());
  std::ostringstream os;
  os << ExactRational(BigInt(162), BigInt(9));
  EXPECT_EQ(os.str(), "18/1");
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"4/3", "18/1", "0/1", "-2/3", "36/1"})
    EXPECT_EQ(ExactRational::parse(s).to_string(), s);
  EXPECT_EQ(ExactRational::parse("8/6"), ExactRational::parse("4/3"));
  EXPECT_EQ(ExactRational::parse("7").to_string(), "7/1");
}

TEST(Rational, ParseErrors) {
  EXPECT_THROW(ExactRational::parse(""), std::invalid_argument);
  EXPECT_THROW(ExactRational::parse("1/"), std::invalid_argument);
  EXPECT_THROW(ExactRational::parse("a/2"), std::invalid_argument);
  EXPECT_THROW(ExactRational::parse("1/0"), std::domain_error);
}

TEST(Rational, Arithmetic) {
  const auto a = ExactRational::parse("2/3");
  const auto b = ExactRational::parse("9/4");
  EXPECT_EQ((a * b).to_string(), "3/2");
  EXPECT_EQ((a / b).to_string(), "8/27");
  EXPECT_TRUE(a < b);
  EXPECT_THROW(a / ExactRational(BigInt(0)), std::domain_error);
}

TEST(Rational, BigPowDoesNotOverflow) {
  EXPECT_EQ(crossmod::big_pow(3, 0), 1);
  EXPECT_EQ(crossmod::big_pow(3, 4), 81);
  const BigInt big = crossmod::big_pow(512, 20);
  EXPECT_EQ(big, BigInt(1) << 180);
  const ExactRational r(big + 1, big);
  EXPECT_FALSE(r.is_integer());
}
