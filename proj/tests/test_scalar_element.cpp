#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace pseudofield;
using namespace testing_support;

TEST(Scalar, ParsesRationalForms)
{
  EXPECT_EQ(*ScalarTraits<Rational>::parse("3/4"), Q(3, 4));
  EXPECT_EQ(*ScalarTraits<Rational>::parse("-6/8"), Q(-3, 4));
  EXPECT_EQ(*ScalarTraits<Rational>::parse("12"), Q(12));
  EXPECT_EQ(*ScalarTraits<Rational>::parse("-0.25"), Q(-1, 4));
  EXPECT_EQ(*ScalarTraits<Rational>::parse("1.5e-3"), Q(3, 2000));
  EXPECT_EQ(*ScalarTraits<Rational>::parse("+2.5E1"), Q(25));
}

TEST(Scalar, RejectsMalformedRationals)
{
  for (const char* bad : {"", "1/0", "a", "1//2", "1.2.3", "e5", "1e", "--1", "0x10", "1/ 2"})
    EXPECT_FALSE(ScalarTraits<Rational>::parse(bad).has_value()) << bad;
}

TEST(Scalar, DoubleParseAndShortestFormat)
{
  EXPECT_EQ(*ScalarTraits<double>::parse("0.5"), 0.5);
  EXPECT_EQ(*ScalarTraits<double>::parse("-1"), -1.0);
  EXPECT_FALSE(ScalarTraits<double>::parse("1,5").has_value());
  EXPECT_EQ(format_double(1.5), "1.5");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(-2.0), "-2");
}

TEST(Scalar, RationalToStringIsPOverQ)
{
  EXPECT_EQ(ScalarTraits<Rational>::to_string(Q(3, 5)), "3/5");
  EXPECT_EQ(ScalarTraits<Rational>::to_string(Q(-4, 2)), "-2");
}

TEST(Scalar, DyadicIsExactInBothModes)
{
  EXPECT_EQ(ScalarTraits<Rational>::dyadic(3, 12), Q(3, 4096));
  EXPECT_EQ(ScalarTraits<double>::dyadic(3, 12), 3.0 / 4096.0);
}

TEST(Residual, RationalIsZeroExactlyWhenEqual)
{
  EXPECT_EQ(residual(q1(1, 3), q1(1, 3)), 0.0);
  const Rational tiny = Q(1, 1) / Rational(mpz_class("1" + std::string(400, '0')));
  const double r = residual(q1(1), Element<Rational>{Q(1) + tiny});
  EXPECT_GT(r, 0.0);
}

TEST(Residual, FloatIsRelativeWithFloor)
{
  EXPECT_NEAR(residual(d1(100.0), d1(100.0 + 1e-7)), 1e-9, 1e-15);
  // Near zero the 1e-3 floor replaces the magnitude.
  EXPECT_NEAR(residual(d1(0.0), d1(1e-12)), 1e-9, 1e-18);
  EXPECT_TRUE(std::isinf(residual(d1(0.0), Element<double>{0.0, 1.0})));
  EXPECT_FALSE(residual(d1(std::numeric_limits<double>::quiet_NaN()), d1(1.0)) <= 1.0);
}

TEST(Residual, TupleIsNormwise)
{
  // Absolute difference 1e-12 in a near-zero entry next to an entry of size 2.
  Tuple<double> a = dt({2.0, 1e-6});
  Tuple<double> b = dt({2.0, 1e-6 + 1e-12});
  EXPECT_NEAR(residual(a, b), 0.5e-12, 1e-20);
}

TEST(Element, FlattenRoundTrip)
{
  auto t = rows<double>({{1, 2}, {3, 4}, {5, 6}});
  auto flat = flatten(t);
  EXPECT_EQ(flat, (std::vector<double>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(unflatten<double>(flat, 2), t);
  EXPECT_EQ(to_string(t), "1,2,3,4,5,6");
}

TEST(Partial, ChainsAndReportsReason)
{
  Partial<int> ok(3);
  Partial<int> bad(Undefined::NotInvertible);
  EXPECT_EQ(*ok.transform([](int v) { return v * 2; }), 6);
  auto chained = bad.and_then([](int v) -> Partial<int> { return v; });
  ASSERT_FALSE(chained);
  EXPECT_EQ(chained.reason(), Undefined::NotInvertible);
  EXPECT_THROW((void)bad.value(), bad_partial_access);
}
