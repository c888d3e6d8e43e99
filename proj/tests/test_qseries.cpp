#include <gtest/gtest.h>

#include <random>

#include "singmod/corpus.hpp"
#include "singmod/qseries.hpp"
#include "singmod/quaternion.hpp"

using namespace singmod;

namespace {

// Sum-of-three-squares counts by a plain cube scan.
i64 squares3(i64 n) {
  i64 c = 0;
  const i64 b = static_cast<i64>(isqrt(i128(n))) + 1;
  for (i64 x = -b; x <= b; ++x)
    for (i64 y = -b; y <= b; ++y)
      for (i64 z = -b; z <= b; ++z) c += x * x + y * y + z * z == n;
  return c;
}

}  // namespace

TEST(Theta, Examples) {
  const TernaryQF sum3 = ternary_form(2, 2, 2, 0, 0, 0);
  EXPECT_EQ(theta_series(sum3, 5), IntSeries({1, 6, 12, 8, 6, 24}));
  // S_2 misses 1 and 2; r(3) = 8 and r(4) = 6 by enumeration
  EXPECT_EQ(theta_series(gross_lattice(2).form, 4), IntSeries({1, 0, 0, 8, 6}));
  EXPECT_EQ(theta_series(sum3, 0), IntSeries({1}));
  EXPECT_THROW(theta_series(sum3, -1), Error);
}

TEST(Theta, SumOfSquaresMatchesCubeScan) {
  const auto t = theta_series(ternary_form(2, 2, 2, 0, 0, 0), 100);
  for (i64 m = 0; m <= 100; ++m) ASSERT_EQ(t[m], squares3(m)) << m;
}

TEST(Theta, CoefficientsNonnegativeAndEven) {
  for (const auto& q : random_ternary_forms(61, 20, 12)) {
    const auto t = theta_series(q, 150);
    EXPECT_EQ(t[0], 1);
    for (i64 m = 1; m <= 150; ++m) {
      ASSERT_GE(t[m], 0);
      ASSERT_EQ(t[m] % 2, 0);
    }
  }
}

TEST(Theta, GrossTwoVanishesAtOneAndTwoModFour) {
  const auto t = theta_series(gross_lattice(2).form, 400);
  for (i64 m = 1; m <= 400; ++m) {
    if (m % 4 == 1 || m % 4 == 2) {
      ASSERT_EQ(t[m], 0) << m;
    }
  }
}

TEST(UOperator, Examples) {
  const IntSeries f({1, 6, 12, 8, 6, 24});
  EXPECT_EQ(u_operator(f, 2), IntSeries({1, 12, 6}));
  EXPECT_EQ(u_operator(f, 1), f);
  // r(4m) = r(m) for sums of three squares
  const auto t = theta_series(ternary_form(2, 2, 2, 0, 0, 0), 16);
  EXPECT_EQ(u_operator(t, 4), IntSeries({1, 6, 12, 8, 6}));
  EXPECT_THROW(u_operator(f, 0), Error);
}

TEST(UOperator, TruncationUnderflow) {
  EXPECT_EQ(u_operator(IntSeries({3, 1, 4}), 7), IntSeries({3}));
  EXPECT_EQ(u_operator(IntSeries({3, 1, 4}), 2).truncation(), 1);
}

TEST(UOperator, ComposesMultiplicatively) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<i64> c(-100, 100);
  for (int t = 0; t < 50; ++t) {
    std::vector<i64> coeffs(1 + rng() % 60);
    for (auto& x : coeffs) x = c(rng);
    const IntSeries f(coeffs);
    ASSERT_EQ(u_operator(u_operator(f, 2), 2), u_operator(f, 4));
    ASSERT_EQ(u_operator(u_operator(f, 2), 3), u_operator(f, 6));
    const auto g = u_operator(f, 3);
    for (i64 m = 0; m <= g.truncation(); ++m) ASSERT_EQ(g[m], f[3 * m]);
  }
}

TEST(IntSeries, BoundsChecked) {
  const IntSeries f({1, 2});
  EXPECT_THROW(f[2], Error);
  EXPECT_THROW(f[-1], Error);
  EXPECT_THROW(IntSeries(std::vector<i64>{}), Error);
}
