#include "ffgeom/exact.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ffgeom;

TEST(Exact, CeilPowerExamples) {
  EXPECT_EQ(ceil_rational_power(29, Rational(1, 2)), 6);
  EXPECT_EQ(ceil_rational_power(101, Rational(3, 4)), 32);
  for (std::int64_t p : {2, 3, 7, 101}) EXPECT_EQ(ceil_rational_power(p, Rational(0)), 1);
}

TEST(Exact, CeilPowerMatchesLinearSearch) {
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    for (int num = 0; num <= 9; ++num) {
      for (int den = 1; den <= 4; ++den) {
        const Rational e(num, den);
        EXPECT_EQ(ceil_rational_power(p, e), oracle::ceil_power(p, e)) << p << "^" << to_string(e);
      }
    }
  }
}

TEST(Exact, ScaledPowersBracketTheValue) {
  for (std::int64_t p : {5, 29, 101}) {
    for (const Rational e : {Rational(1, 2), Rational(5, 4), Rational(7, 3)}) {
      for (const Rational c : {Rational(1, 5), Rational(1), Rational(16)}) {
        const BigInt lo = floor_scaled_power(p, e, c);
        const BigInt hi = ceil_scaled_power(p, e, c);
        EXPECT_NE(compare_scaled(lo, c, p, e), std::strong_ordering::greater);
        EXPECT_NE(compare_scaled(hi, c, p, e), std::strong_ordering::less);
        EXPECT_EQ(compare_scaled(lo + 1, c, p, e), std::strong_ordering::greater);
        EXPECT_TRUE(hi - lo <= 1);
      }
    }
  }
}

TEST(Exact, CompareCountToPower) {
  EXPECT_EQ(compare_count_to_power(5, 5, Rational(1)), std::strong_ordering::equal);
  EXPECT_EQ(compare_count_to_power(6, 29, Rational(1, 2)), std::strong_ordering::greater);
  EXPECT_EQ(compare_count_to_power(2, 5, Rational(1, 2)), std::strong_ordering::less);
}

TEST(Exact, IntegerRootFloor) {
  EXPECT_EQ(integer_root_floor(1030301, 4), 31);
  EXPECT_EQ(integer_root_floor(1048576, 4), 32);
  EXPECT_EQ(integer_root_floor(0, 3), 0);
}

TEST(Exact, ParseRationalAcceptsOnlyIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_FALSE(parse_rational("0.5"));
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("1e3"));
  EXPECT_FALSE(parse_rational(""));
}

TEST(Exact, FormattingIsNumOverDen) {
  EXPECT_EQ(to_string(Rational(5, 4)), "5/4");
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  EXPECT_EQ(ExactExponent::negative_infinity().to_string(), "-inf");
}

TEST(Exact, NegativeInfinityIsBottom) {
  const auto bottom = ExactExponent::negative_infinity();
  EXPECT_LT(bottom, ExactExponent(Rational(-1000)));
  EXPECT_TRUE((bottom + ExactExponent(Rational(3))).is_negative_infinity());
  EXPECT_THROW(bottom.value(), DomainError);
}
