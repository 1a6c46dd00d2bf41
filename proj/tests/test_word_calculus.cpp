#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace pseudofield;
using namespace testing_support;

namespace {

const auto affine_q = make_instance<Rational>(InstanceDescriptor::affine2());
const auto moebius = make_instance<double>(InstanceDescriptor::moebius3());
const auto moebius_q = make_instance<Rational>(InstanceDescriptor::moebius3());
const auto semi3_q = make_instance<Rational>(InstanceDescriptor::semidirect(3));
const auto mik3_q = make_instance<Rational>(InstanceDescriptor::mikhailichenko(3));

using QWord = Word<Rational>;

} // namespace

TEST(EvalWord, AffineExamples)
{
  EXPECT_EQ(*eval_word(affine_q, q1(5), QWord{RightMul<Rational>{q1(3)}, Inv{}}), q1(1, 15));
  EXPECT_EQ(*eval_word(affine_q, q1(7), QWord{Inv{}, Inv{}}), q1(7));
  EXPECT_EQ(*eval_word(affine_q, q1(2), QWord{RightMul<Rational>{q1(5)}, RightMul<Rational>{q1(1, 5)}}), q1(2));
  EXPECT_EQ(*eval_word(affine_q, q1(2), QWord{}), q1(2));
}

TEST(EvalWord, UndefinedPropagatesReason)
{
  auto r = eval_word(affine_q, q1(0), QWord{Inv{}, Phi{2}});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.reason(), Undefined::NotInvertible);
}

TEST(EvalWord, SigmaAtomMatchesComposition)
{
  auto x = el<Rational>({Q(2), Q(3), Q(5)});
  EXPECT_EQ(*eval_word(semi3_q, x, QWord{Sigma{2, 3}}), *eval_word(semi3_q, x, QWord{Phi{3}, Phi{2}, Phi{3}}));
}

TEST(Concat, AppendsInOrder)
{
  QWord a{Phi{2}};
  QWord b{Inv{}};
  EXPECT_EQ(concat(a, b), (QWord{Phi{2}, Inv{}}));
}

TEST(TupleWord, AffinePair)
{
  auto w = tuple_word(affine_q, Tuple<Rational>{q1(3), q1(5)});
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (QWord{RightMul<Rational>{q1(2, 5)}, Phi{2}, RightMul<Rational>{q1(5)}}));
}

TEST(TupleWord, BaseCaseIsRightMultiplication)
{
  auto w = tuple_word(moebius_q, Tuple<Rational>{q1(7, 3)});
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, QWord{RightMul<Rational>{q1(7, 3)}});
}

TEST(TupleWord, NeutralPairActsAsIdentity)
{
  auto w = tuple_word(affine_q, Tuple<Rational>{q1(1), q1(0)});
  ASSERT_TRUE(w);
  for (long p = -10; p <= 10; ++p)
    EXPECT_EQ(*eval_word(affine_q, q1(p, 3), *w), q1(p, 3));
}

TEST(TupleWord, LongerThanDegreeThrows)
{
  EXPECT_THROW((void)tuple_word(affine_q, Tuple<Rational>{q1(1), q1(2), q1(3)}), std::invalid_argument);
}

TEST(Act, AffineClosedForm)
{
  EXPECT_EQ(*act(affine_q, q1(2), Tuple<Rational>{q1(3), q1(5)}), q1(1));
  // x(y1 - y2) + y2 on a grid
  for (long x = -6; x <= 6; ++x)
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b) {
        if (a == b)
          continue;
        auto v = act(affine_q, q1(x, 2), Tuple<Rational>{q1(a, 3), q1(b, 5)});
        if (v) {
          EXPECT_EQ((*v)[0], Q(x, 2) * (Q(a, 3) - Q(b, 5)) + Q(b, 5));
        }
      }
}

TEST(Act, MoebiusExample)
{
  EXPECT_EQ(*act(moebius_q, q1(3), Tuple<Rational>{q1(2), q1(1, 2), q1(-1)}), q1(5));
  auto f = act(moebius, d1(3), dt({2, 0.5, -1}));
  ASSERT_TRUE(f);
  EXPECT_NEAR((*f)[0], 5.0, 1e-12);
}

TEST(Act, UnitsActAsProjections)
{
  const Tuple<Rational> ys{q1(3, 2), q1(1, 3), q1(-5, 4)};
  for (int i = 1; i <= 3; ++i)
    EXPECT_EQ(*act(moebius_q, unit(moebius_q, i), ys), ys[static_cast<std::size_t>(i - 1)]) << i;
  const Tuple<Rational> rs = rows<Rational>({{Q(2), Q(1), Q(0)}, {Q(1, 2), Q(3), Q(1)}, {Q(0), Q(-1), Q(4)}});
  for (int i = 1; i <= 3; ++i)
    EXPECT_EQ(*act(mik3_q, unit(mik3_q, i), rs), rs[static_cast<std::size_t>(i - 1)]) << i;
}

TEST(Act, BranchesAgreeWhereDefined)
{
  const Tuple<Rational> ys{q1(2), q1(1, 2), q1(-1)};
  for (long p = -8; p <= 8; ++p) {
    auto branches = act_branches(moebius_q, q1(p, 4), ys);
    for (std::size_t k = 1; k < branches.size(); ++k)
      EXPECT_EQ(branches[k].value, branches[0].value) << to_string(branches[k].branch) << " x=" << p << "/4";
  }
}

TEST(Act, SemidirectIsRowTimesMatrix)
{
  // Matrix oracle: x M(Y), computed by hand.
  const Tuple<Rational> ys = rows<Rational>({{Q(2), Q(1), Q(0)}, {Q(1, 2), Q(3), Q(1)}, {Q(0), Q(-1), Q(4)}});
  const auto x = el<Rational>({Q(3), Q(-1), Q(1, 2)});
  Element<Rational> expect{Q(3) * 2 - Q(1, 2) + 0, Q(3) * 1 - 3 - Q(1, 2), Q(0) - 1 + 2};
  EXPECT_EQ(*act(semi3_q, x, ys), expect);
}
