#include <gtest/gtest.h>

#include "tangle/gradedring.hpp"

using namespace tangle;

namespace {

const Ctx& two_vars() {
  static const Ctx c = VarContext::make({"t1", "t2"}, VarRole::strand);
  return c;
}

}  // namespace

TEST(QuarterLaurent, AdditionCancelsToZero) {
  QL a = tq(4) - tq(0);
  QL b = tq(0) - tq(4);
  EXPECT_TRUE((a + b).is_zero());
  EXPECT_EQ((a + b).str(), "0");
}

TEST(QuarterLaurent, MultiplicationAddsQuarterExponents) {
  QL x = tq(1) * tq(3);
  EXPECT_EQ(x, tq(4));
  EXPECT_EQ(x.pretty(), "t");
  EXPECT_EQ((tq(1) * tq(1)).pretty(), "t^(1/2)");
}

TEST(QuarterLaurent, ProductOfBinomials) {
  QL a = tq(4) + tq(0), b = tq(4) - tq(0);
  EXPECT_EQ((a * b).pretty(), "t^2 - 1");
}

TEST(QuarterLaurent, PrettyUsesDescendingDegree) {
  QL p = tq(4) - tq(0) + tq(-4);
  EXPECT_EQ(p.pretty(), "t - 1 + t^-1");
  QL r = tq(4, -2) + tq(0, 5) + tq(-4, -2);
  EXPECT_EQ(r.pretty(), "-2*t + 5 - 2*t^-1");
}

TEST(QuarterLaurent, CanonicalStringIsAscending) {
  QL p = tq(4) - tq(0) + tq(-4);
  EXPECT_EQ(p.str(), "1*t^-1 + -1 + 1*t");
}

TEST(QuarterLaurent, QAndTShareTheRing) {
  EXPECT_EQ(qpow(1), tq(2));
  EXPECT_EQ(qpow(1).pretty(), "q");
  EXPECT_EQ(qpow(-2, 3).pretty(), "3*q^-2");
  EXPECT_EQ(collapse_single(qpow(2)).pretty(), "t");
}

TEST(QuarterLaurent, UnitMonomialInverse) {
  QL m = QL::monomial(two_vars(), -1, {3, -2});
  ASSERT_TRUE(m.is_unit_monomial());
  EXPECT_EQ(m * m.unit_inverse(), QL::constant(two_vars(), 1));
  EXPECT_FALSE((tq(1) + tq(2)).is_unit_monomial());
  EXPECT_FALSE(tq(0, 2).is_unit_monomial());
}

TEST(QuarterLaurent, DegreeRangeAndCoefficientSum) {
  QL p = tq(8, -2) + tq(-4, 5);
  auto [lo, hi] = p.degree_range();
  EXPECT_EQ(lo, -4);
  EXPECT_EQ(hi, 8);
  EXPECT_EQ(p.sum_of_coefficients(), 3);
  EXPECT_THROW(QL(VarContext::single_t()).degree_range(), RingError);
}

TEST(QuarterLaurent, BigCoefficientsAreExact) {
  QL p = tq(0, 1);
  for (int k = 0; k < 80; ++k) p = p * (tq(0, 2));
  EXPECT_EQ(p.coeff(0).get_str(), "1208925819614629174706176");
}

TEST(QuarterLaurent, ExponentOverflowThrows) {
  QL big = tq(std::numeric_limits<std::int64_t>::max() - 1);
  EXPECT_THROW(big * tq(8), RingError);
  EXPECT_THROW(QExp::whole(std::numeric_limits<std::int64_t>::max() / 2), RingError);
}

TEST(VarContext, DuplicateNamesRejected) {
  EXPECT_THROW(VarContext::make({"t1", "t1"}, VarRole::strand), RingError);
}

TEST(VarMap, CollapseSendsEveryVariableToT) {
  QL p = QL::monomial(two_vars(), 1, {4, -4}) + QL::monomial(two_vars(), 2, {4, 4});
  QL c = collapse_single(p);
  EXPECT_EQ(c.pretty(), "2*t^2 + 1");
}

TEST(VarMap, ByNamesAndComposition) {
  Ctx three = VarContext::make({"a", "b", "c"}, VarRole::strand);
  VarMap f = VarMap::by_names(two_vars(), three, {{"t1", "c"}, {"t2", "a"}});
  QL p = QL::monomial(two_vars(), 1, {1, 2});
  EXPECT_EQ(f(p), QL::monomial(three, 1, {2, 0, 1}));
  VarMap g = f.then(VarMap::collapse(three));
  EXPECT_EQ(g(p), tq(3));
  EXPECT_THROW(VarMap::by_names(two_vars(), three, {{"t1", "z"}}), RingError);
}

TEST(VarMap, ImageMustStayOnTheQuarterLattice) {
  VarMap half(VarContext::single_t(), VarContext::single_t());
  half.send_monomial(0, {2});
  EXPECT_EQ(half(tq(4)), tq(2));
  EXPECT_THROW(half(tq(1)), RingError);
}

TEST(VarMap, ContextMismatchThrows) {
  Ctx other = VarContext::make({"x"}, VarRole::strand);
  VarMap id = VarMap::identity(two_vars());
  EXPECT_THROW(id(QL::var(other, 0, 4)), RingError);
}
