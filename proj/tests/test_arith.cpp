#include <gtest/gtest.h>

#include <cmath>

#include "singmod/arith.hpp"

using namespace singmod;

namespace {

i64 divisor_scan(i64 n) {
  i64 c = 0;
  for (i64 d = 1; d <= n; ++d) c += (n % d == 0);
  return c;
}

// Legendre symbol by Euler's criterion, odd prime p.
int euler_criterion(i64 a, i64 p) {
  i64 r = mod(a, p);
  if (r == 0) return 0;
  return powmod(static_cast<u64>(r), static_cast<u64>((p - 1) / 2), static_cast<u64>(p)) == 1 ? 1 : -1;
}

bool fundamental_by_definition(i64 d) {
  // No square f^2 > 1 with d / f^2 still a discriminant.
  for (i64 f = 2; f * f <= -d; ++f) {
    if (d % (f * f) == 0 && is_negative_discriminant(d / (f * f))) return false;
  }
  return true;
}

}  // namespace

TEST(Sigma0, Examples) {
  EXPECT_EQ(sigma0(1), 1);
  EXPECT_EQ(sigma0(12), 6);
  EXPECT_EQ(sigma0(5040), divisor_scan(5040));
  EXPECT_EQ(sigma0(5040), 60);
}

TEST(Sigma0, RejectsNonPositive) {
  EXPECT_THROW(sigma0(0), Error);
  EXPECT_THROW(sigma0(-4), Error);
}

TEST(Sigma0, MatchesScanUpTo2000) {
  for (i64 n = 1; n <= 2000; ++n) ASSERT_EQ(sigma0(n), divisor_scan(n)) << n;
}

TEST(Sigma0Tilde, Examples) {
  EXPECT_EQ(sigma0_tilde(i64{1}), 1);
  EXPECT_EQ(sigma0_tilde(i64{32}), 8);
  EXPECT_EQ(sigma0_tilde(i64{100}), 12);
  EXPECT_THROW(sigma0_tilde(i64{0}), Error);
}

TEST(Sigma0Tilde, PrefixMaximumUpTo10000) {
  i64 best = 0;
  Sigma0TildeTable table(10000);
  for (i64 n = 1; n <= 10000; ++n) {
    best = std::max(best, sigma0(n));
    ASSERT_EQ(sigma0_tilde(n), best) << n;
    ASSERT_EQ(table(u128(n)), best) << n;
  }
}

TEST(Sigma0Tilde, LargeArgumentsAreMonotone) {
  i64 prev = 0;
  for (i64 n = 1; n < (i64{1} << 50); n = n * 3 + 1) {
    const i64 v = sigma0_tilde(n);
    ASSERT_GE(v, prev);
    ASSERT_GE(v, sigma0(n));
    prev = v;
  }
  // 735134400 = 2^6 3^3 5^2 7 11 13 17 is highly composite with 1344 divisors.
  EXPECT_EQ(sigma0_tilde(i64{735134400}), 1344);
  // The previous record is 698377680 = 2^4 3^3 5 7 11 13 17 19 with 1280.
  EXPECT_EQ(sigma0_tilde(i64{735134399}), 1280);
  EXPECT_EQ(sigma0(698377680), 1280);
}

TEST(Sigma0, AsymptoticEnvelope) {
  for (i64 n = 3; n <= 10000; ++n) {
    const double ln = std::log(static_cast<double>(n));
    // Nicolas-Robin: log d(n) <= 1.5379 log 2 log n / log log n for n >= 3
    const double envelope = std::exp(1.5379 * std::log(2.0) * ln / std::log(ln));
    ASSERT_LE(static_cast<double>(sigma0(n)), envelope) << n;
  }
}

TEST(Moebius, Examples) {
  EXPECT_EQ(moebius(1), 1);
  EXPECT_EQ(moebius(12), 0);
  EXPECT_EQ(moebius(30), -1);
  EXPECT_EQ(moebius(7), -1);
  EXPECT_EQ(moebius(6), 1);
  EXPECT_THROW(moebius(0), Error);
}

TEST(Moebius, SumOverDivisorsVanishes) {
  for (i64 n = 2; n <= 500; ++n) {
    i64 s = 0;
    for (i64 d = 1; d <= n; ++d)
      if (n % d == 0) s += moebius(d);
    ASSERT_EQ(s, 0) << n;
  }
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker(-3, 5), -1);
  EXPECT_EQ(kronecker(-3, 7), 1);
  EXPECT_EQ(kronecker(0, 3), 0);
}

TEST(Kronecker, TwoConvention) {
  EXPECT_EQ(kronecker(-4, 2), 0);
  EXPECT_EQ(kronecker(-7, 2), 1);   // -7 = 1 mod 8
  EXPECT_EQ(kronecker(-23, 2), 1);  // -23 = 1 mod 8
  EXPECT_EQ(kronecker(-3, 2), -1);  // -3 = 5 mod 8
  EXPECT_EQ(kronecker(-11, 2), -1);
}

TEST(Kronecker, AgreesWithEulerCriterion) {
  for (i64 p : primes_up_to(200)) {
    if (p == 2) continue;
    for (i64 a = -300; a <= 300; ++a) ASSERT_EQ(kronecker(a, p), euler_criterion(a, p)) << a << " " << p;
  }
}

TEST(Kronecker, MultiplicativeInDenominator) {
  for (i64 a = -60; a <= 60; ++a) {
    for (i64 m = 1; m <= 40; ++m) {
      for (i64 n = 1; n <= 40; ++n) ASSERT_EQ(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
    }
  }
}

TEST(Discriminant, Examples) {
  auto d4 = decompose_discriminant(-4);
  EXPECT_EQ(d4.fundamental, -4);
  EXPECT_EQ(d4.conductor, 1);
  auto d75 = decompose_discriminant(-75);
  EXPECT_EQ(d75.fundamental, -3);
  EXPECT_EQ(d75.conductor, 5);
  auto d300 = decompose_discriminant(-300);
  EXPECT_EQ(d300.fundamental, -3);
  EXPECT_EQ(d300.conductor, 10);
  EXPECT_EQ(decompose_discriminant(-16).fundamental, -4);
  EXPECT_EQ(decompose_discriminant(-16).conductor, 2);
  EXPECT_EQ(decompose_discriminant(-32).fundamental, -8);
}

TEST(Discriminant, RejectsBadValues) {
  EXPECT_THROW(decompose_discriminant(0), Error);
  EXPECT_THROW(decompose_discriminant(5), Error);
  EXPECT_THROW(decompose_discriminant(-1), Error);
  EXPECT_THROW(decompose_discriminant(-2), Error);
  EXPECT_THROW(decompose_discriminant(-6), Error);
}

TEST(Discriminant, RecomposesUpTo100000) {
  for (i64 d = 3; d <= 100000; ++d) {
    if (!is_negative_discriminant(-d)) continue;
    const auto disc = decompose_discriminant(-d);
    ASSERT_EQ(disc.fundamental * disc.conductor * disc.conductor, -d);
    ASSERT_TRUE(is_negative_discriminant(disc.fundamental));
  }
}

TEST(Discriminant, FundamentalPartMatchesDefinitionUpTo3000) {
  for (i64 d = 3; d <= 3000; ++d) {
    if (!is_negative_discriminant(-d)) continue;
    const auto disc = decompose_discriminant(-d);
    ASSERT_EQ(disc.is_fundamental(), fundamental_by_definition(-d)) << -d;
    ASSERT_TRUE(fundamental_by_definition(disc.fundamental)) << -d;
  }
}

TEST(PFundamentalPart, Examples) {
  EXPECT_EQ(p_fundamental_part(decompose_discriminant(-300), 5).value, -12);
  EXPECT_EQ(p_fundamental_part(decompose_discriminant(-75), 5).value, -3);
  EXPECT_EQ(p_fundamental_part(decompose_discriminant(-23), 7).value, -23);
  EXPECT_THROW(p_fundamental_part(decompose_discriminant(-23), 6), Error);
}

TEST(PFundamentalPart, IdempotentAndCoprime) {
  for (const auto& d : discriminants_in_range(3, 5000)) {
    for (i64 p : {2, 3, 5, 7, 11}) {
      const auto pf = p_fundamental_part(d, p);
      ASSERT_NE(pf.conductor % p, 0);
      ASSERT_EQ(p_fundamental_part(pf, p), pf);
      ASSERT_EQ(pf, decompose_discriminant(pf.value));
    }
  }
}

TEST(Primes, SieveMatchesTrialDivision) {
  const auto ps = primes_up_to(3000);
  std::size_t k = 0;
  for (i64 n = 2; n <= 3000; ++n) {
    bool prime = true;
    for (i64 d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
    ASSERT_EQ(is_prime(n), prime) << n;
    if (prime) {
      ASSERT_EQ(ps[k++], n);
    }
  }
  EXPECT_EQ(k, ps.size());
  EXPECT_TRUE(is_prime(1000000007));
  EXPECT_FALSE(is_prime(i64{1000000007} * 998244353));
}

TEST(Factorize, RebuildsLargeComposites) {
  for (i64 n : {i64{600851475143}, i64{1000000007} * 998244353, i64{1} << 62, i64{999999999989}}) {
    i64 prod = 1;
    for (auto [p, e] : factorize(n)) {
      ASSERT_TRUE(is_prime(p));
      for (int k = 0; k < e; ++k) prod *= p;
    }
    EXPECT_EQ(prod, n);
  }
}
