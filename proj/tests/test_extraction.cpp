#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace pseudofield;
using namespace testing_support;

namespace {

const auto affine_q = make_instance<Rational>(InstanceDescriptor::affine2());
const auto moebius_q = make_instance<Rational>(InstanceDescriptor::moebius3());

} // namespace

TEST(Solve, SemidirectExamples)
{
  const auto semi2 = make_instance<double>(InstanceDescriptor::semidirect(2));
  const auto oracle = make_group_oracle(semi2);
  const auto Y = rows<double>({{2, 3}, {4, 5}});
  EXPECT_EQ(*solve_transitive(oracle, gidentity(semi2), Y), Y);
  EXPECT_EQ(*solve_transitive(oracle, rows<double>({{2, 0}, {0, 1}}), Y), rows<double>({{1, 1.5}, {4, 5}}));
}

TEST(Solve, AffineExchange)
{
  const auto oracle = make_group_oracle(affine_q);
  EXPECT_EQ(*solve_transitive(oracle, Tuple<Rational>{q1(1), q1(0)}, Tuple<Rational>{q1(0), q1(1)}),
            (Tuple<Rational>{q1(0), q1(1)}));
  EXPECT_EQ(*exchange_element(oracle, 1, 2), (Tuple<Rational>{q1(0), q1(1)}));
}

TEST(Solve, DegenerateIsUndefined)
{
  const auto oracle = make_group_oracle(moebius_q);
  auto g = solve_transitive(oracle, Tuple<Rational>{q1(2), q1(2), q1(3)}, gidentity(moebius_q));
  EXPECT_FALSE(g);
  EXPECT_THROW((void)solve_transitive(oracle, Tuple<Rational>{q1(2)}, Tuple<Rational>{q1(3)}), std::invalid_argument);
}

TEST(Solve, GenericSolverMapsXToY)
{
  const auto oracle = make_group_oracle(moebius_q);
  const Tuple<Rational> X{q1(3, 2), q1(1, 4), q1(-3, 4)};
  const Tuple<Rational> Y{q1(5, 4), q1(-1, 8), q1(-5, 4)};
  auto g = solve_transitive(oracle, X, Y);
  ASSERT_TRUE(g);
  EXPECT_EQ(*gmul(moebius_q, X, *g), Y);
}

TEST(Newton, AgreesWithLinearSolve)
{
  const auto semi3 = make_instance<double>(InstanceDescriptor::semidirect(3));
  const auto oracle = make_group_oracle(semi3);
  const auto X = rows<double>({{1.2, 0.1, -0.3}, {0.2, 0.9, 0.1}, {-0.1, 0.3, 1.1}});
  const auto Y = rows<double>({{0.8, -0.2, 0.1}, {0.4, 1.3, 0.0}, {0.0, 0.2, 0.7}});
  auto exact = solve_transitive(oracle, X, Y);
  auto newton = newton_solve(oracle, X, Y, gidentity(semi3));
  ASSERT_TRUE(exact);
  ASSERT_TRUE(newton);
  EXPECT_LT(residual(*newton, *exact), 1e-10);
}

TEST(Extract, AffinePhiAndUnit)
{
  const auto ext = extract_pseudofield(make_group_oracle(affine_q));
  EXPECT_EQ(*phi(ext, 2, q1(1, 4)), q1(3, 4));
  for (long p = -5; p <= 5; ++p) {
    EXPECT_EQ(*mul(ext, q1(p, 3), q1(1)), q1(p, 3));
    EXPECT_EQ(*mul(ext, q1(p, 3), q1(7, 2)), *mul(affine_q, q1(p, 3), q1(7, 2)));
  }
  EXPECT_EQ(*inv(ext, q1(4)), q1(1, 4));
}

TEST(Extract, SemidirectSwap)
{
  const auto semi3 = make_instance<Rational>(InstanceDescriptor::semidirect(3));
  const auto ext = extract_pseudofield(make_group_oracle(semi3));
  const auto x = el<Rational>({Q(2), Q(-1, 3), Q(5)});
  EXPECT_EQ(*phi(ext, 2, x), el<Rational>({Q(-1, 3), Q(2), Q(5)}));
  const auto y = el<Rational>({Q(3), Q(1), Q(-2)});
  // (x1 y1, x1 y2 + x2, x1 y3 + x3)
  EXPECT_EQ(*mul(ext, x, y), el<Rational>({Q(6), Q(2) - Q(1, 3), Q(-4) + Q(5)}));
}

TEST(Extract, MoebiusPhi3IsNegation)
{
  const auto ext = extract_pseudofield(make_group_oracle(moebius_q));
  for (long p = -8; p <= 8; ++p) {
    auto v = phi(ext, 3, q1(p, 3));
    if (v) {
      EXPECT_EQ(*v, q1(-p, 3));
    }
  }
}

TEST(RoundTrip, ExactOnShippedInstances)
{
  SampleConfig cfg;
  cfg.samples = 200;
  for (const auto* inst : {&affine_q, &moebius_q}) {
    auto report = roundtrip_check(*inst, cfg);
    EXPECT_TRUE(report.pass()) << inst->name;
    for (const auto& e : report.checks)
      EXPECT_EQ(e.max_residual, 0.0) << inst->name << " " << e.check_id;
  }
}
