#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace pseudofield;
using namespace testing_support;

TEST(Instances, NamesRoundTrip)
{
  for (auto kind : {InstanceKind::Affine2, InstanceKind::Moebius3, InstanceKind::Semidirect,
                    InstanceKind::Mikhailichenko})
    EXPECT_EQ(parse_instance_name(to_string(kind)), kind);
  EXPECT_FALSE(parse_instance_name("gl3").has_value());
  EXPECT_TRUE(parameterized(InstanceKind::Semidirect));
  EXPECT_FALSE(parameterized(InstanceKind::Moebius3));
}

TEST(Instances, BadDegreeThrows)
{
  EXPECT_THROW(make_instance<double>({InstanceKind::Affine2, 3}), std::invalid_argument);
  EXPECT_THROW(make_instance<double>({InstanceKind::Moebius3, 2}), std::invalid_argument);
  EXPECT_THROW(make_instance<double>(InstanceDescriptor::semidirect(1)), std::invalid_argument);
  EXPECT_THROW(make_instance<Rational>(InstanceDescriptor::mikhailichenko(0)), std::invalid_argument);
}

TEST(Affine2, Primitives)
{
  auto inst = make_instance<Rational>(InstanceDescriptor::affine2());
  EXPECT_EQ(*mul(inst, q1(2, 3), q1(9)), q1(6));
  EXPECT_EQ(*inv(inst, q1(-4)), q1(-1, 4));
  EXPECT_EQ(*phi(inst, 2, q1(1, 4)), q1(3, 4));
  EXPECT_EQ(inst.units, (Tuple<Rational>{q1(1), q1(0)}));
  EXPECT_EQ(*inst.reference_action(q1(2), Tuple<Rational>{q1(3), q1(5)}), q1(1));
}

TEST(Moebius3, MultiplicationFormula)
{
  auto inst = make_instance<Rational>(InstanceDescriptor::moebius3());
  for (long p = -6; p <= 6; ++p) {
    auto y = q1(p, 5);
    EXPECT_EQ(*mul(inst, q1(1), y), y);
    auto xy = mul(inst, q1(3, 2), y);
    const Rational x = Q(3, 2);
    const Rational den = 1 + x + Q(p, 5) - x * Q(p, 5);
    if (den == 0) {
      EXPECT_FALSE(xy);
    } else {
      EXPECT_EQ((*xy)[0], Rational(2 * x * Q(p, 5) / den));
    }
  }
}

TEST(Moebius3, ConjugateOfMultiplicativeGroup)
{
  // psi(x) = 2x/(x+1), psi^{-1}(x) = x/(2-x); mul(x, y) = psi^{-1}(psi(x) psi(y)).
  auto inst = make_instance<Rational>(InstanceDescriptor::moebius3());
  auto psi = [](const Rational& x) { return Rational(2 * x / (x + 1)); };
  auto psi_inv = [](const Rational& x) { return Rational(x / (2 - x)); };
  for (long p = -7; p <= 7; ++p)
    for (long q = -7; q <= 7; ++q) {
      const Rational x = Q(p, 3);
      const Rational y = Q(q, 4);
      if (x == -1 || y == -1)
        continue;
      const Rational prod = psi(x) * psi(y);
      if (prod == 2)
        continue;
      auto m = mul(inst, Element<Rational>{x}, Element<Rational>{y});
      ASSERT_TRUE(m) << x << " " << y;
      EXPECT_EQ((*m)[0], psi_inv(prod));
    }
}

TEST(Moebius3, InverseAndExcludedPoints)
{
  auto inst = make_instance<Rational>(InstanceDescriptor::moebius3());
  EXPECT_EQ(inv(inst, q1(0)).reason(), Undefined::NotInvertible);
  EXPECT_EQ(inv(inst, q1(-1)).reason(), Undefined::NotInvertible);
  for (long p = 1; p <= 9; ++p) {
    auto x = q1(p, 2);
    auto xi = inv(inst, x);
    if (xi) {
      EXPECT_EQ(*mul(inst, *xi, x), q1(1));
    }
  }
}

TEST(Moebius3, ReferenceActionProjections)
{
  auto inst = make_instance<Rational>(InstanceDescriptor::moebius3());
  Sampler<Rational> rng(5, "moebius-ref", 0);
  for (int s = 0; s < 100; ++s) {
    auto Y = rng.tuple_near(gidentity(inst), 0.25);
    auto first = inst.reference_action(q1(1), Y);
    auto third = inst.reference_action(q1(-1), Y);
    if (first) {
      EXPECT_EQ(*first, Y[0]);
    }
    if (third) {
      EXPECT_EQ(*third, Y[2]);
    }
  }
}

TEST(Mikhailichenko, PhiNIsInvolution)
{
  auto inst = make_instance<Rational>(InstanceDescriptor::mikhailichenko(3));
  const auto x = el<Rational>({Q(1, 5), Q(1), Q(5)});
  const auto once = phi(inst, 3, x);
  EXPECT_EQ(*once, el<Rational>({Q(-1, 5), Q(1), Q(5)}));
  EXPECT_EQ(*phi(inst, 3, *once), x);
  // phi_2 is still the coordinate swap.
  EXPECT_EQ(*phi(inst, 2, x), el<Rational>({Q(1), Q(1, 5), Q(5)}));
  // e_3 = phi_3((1, 0, 0)) = (1 - 1 - 0, 0, 0)
  EXPECT_EQ(inst.units[2], el<Rational>({Q(0), Q(0), Q(0)}));
  EXPECT_FALSE(inst.reference_action);
}

TEST(Semidirect, UnitsAreStandardBasis)
{
  auto inst = make_instance<double>(InstanceDescriptor::semidirect(4));
  for (int i = 1; i <= 4; ++i)
    for (int c = 0; c < 4; ++c)
      EXPECT_EQ(unit(inst, i)[static_cast<std::size_t>(c)], c == i - 1 ? 1.0 : 0.0);
  EXPECT_TRUE(inst.solver);
}

TEST(Adversarial, ViolatesMainEquation)
{
  auto inst = make_adversarial<Rational>();
  // a = b = 2: phi(phi(2) phi(2)) = 2, phi(2 phi(1/2)) 2 = -2.
  EXPECT_EQ(*mul_i_conjugate(inst, 2, q1(2), q1(2)), q1(2));
  EXPECT_EQ(*mul_i_alt(inst, 2, q1(2), q1(2)), q1(-2));
}

TEST(Linalg, SolveAndDeterminant)
{
  using linalg::Matrix;
  Matrix<Rational> a{{Q(2), Q(0)}, {Q(0), Q(1)}};
  Matrix<Rational> b{{Q(2), Q(3)}, {Q(4), Q(5)}};
  auto x = linalg::solve(a, b);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Matrix<Rational>{{Q(1), Q(3, 2)}, {Q(4), Q(5)}}));
  EXPECT_EQ(linalg::determinant(b), Q(-2));
  Matrix<Rational> singular{{Q(1), Q(2)}, {Q(2), Q(4)}};
  EXPECT_EQ(linalg::solve(singular, b).reason(), Undefined::NotInvertible);
}
