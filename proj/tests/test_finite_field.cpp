#include <gtest/gtest.h>

#include <random>
#include <set>

#include "singmod/finite_field.hpp"

using namespace singmod;
using fp::Poly;

namespace {

Poly random_monic(std::mt19937_64& rng, u64 p, std::size_t degree) {
  std::vector<u64> c(degree + 1);
  for (auto& x : c) x = rng() % p;
  c.back() = 1;
  return {p, c};
}

// Roots in F_{p^2} by trying every element.
std::set<fp::Fp2::Elem> brute_roots(const fp::Fp2& field, const Poly& f) {
  std::set<fp::Fp2::Elem> out;
  const u64 p = field.modulus();
  for (u64 a = 0; a < p; ++a)
    for (u64 b = 0; b < p; ++b) {
      const fp::Fp2::Elem x{a, b};
      fp::Fp2::Elem acc{};
      for (std::size_t k = f.coefficients().size(); k-- > 0;) acc = field.add(field.mul(acc, x), field.from(f[k]));
      if (acc == fp::Fp2::Elem{}) out.insert(x);
    }
  return out;
}

}  // namespace

TEST(Poly, DivisionIdentity) {
  std::mt19937_64 rng(1);
  for (u64 p : {2, 3, 7, 101}) {
    for (int t = 0; t < 30; ++t) {
      const Poly a = random_monic(rng, p, 3 + rng() % 8), b = random_monic(rng, p, 1 + rng() % 4);
      const auto [q, r] = a.divmod(b);
      ASSERT_EQ(q * b + r, a);
      ASSERT_LT(r.degree(), b.degree());
    }
  }
}

TEST(Squarefree, FactorizationReassembles) {
  std::mt19937_64 rng(2);
  for (u64 p : {2, 3, 5, 13}) {
    for (int t = 0; t < 40; ++t) {
      const Poly a = random_monic(rng, p, 1 + rng() % 3), b = random_monic(rng, p, 1 + rng() % 3);
      const Poly f = a * a * b * random_monic(rng, p, rng() % 3);
      Poly prod = Poly::constant(p, 1);
      for (const auto& [g, m] : fp::squarefree_factorization(f)) {
        ASSERT_TRUE(fp::gcd(g, g.derivative()).is_one()) << g.str();
        for (long k = 0; k < m; ++k) prod = prod * g;
      }
      ASSERT_EQ(prod, f.monic());
    }
  }
}

TEST(Squarefree, HandlesPthPowers) {
  // (X^3 + 1)^3 = X^9 + 1 over F_3, which is (X + 1)^9
  const Poly f(3, {1, 0, 0, 0, 0, 0, 0, 0, 0, 1});
  const auto parts = fp::squarefree_factorization(f);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].second, 9);
  EXPECT_EQ(parts[0].first, Poly(3, {1, 1}));
  EXPECT_EQ(fp::squarefree_part(f).degree(), 1);
}

TEST(DistinctDegree, DegreesAddUp) {
  std::mt19937_64 rng(3);
  for (u64 p : {3, 7, 31}) {
    for (int t = 0; t < 20; ++t) {
      const Poly f = fp::squarefree_part(random_monic(rng, p, 2 + rng() % 12));
      long total = 0;
      for (const auto& [d, part] : fp::distinct_degree_factorization(f)) {
        ASSERT_EQ(part.degree() % d, 0);
        total += part.degree();
        for (const auto& g : fp::equal_degree_factorization(part, d)) ASSERT_EQ(g.degree(), d);
      }
      ASSERT_EQ(total, f.degree());
    }
  }
}

TEST(RootsInFp2, MatchesBruteForce) {
  std::mt19937_64 rng(4);
  for (u64 p : {3, 5, 7, 11}) {
    const fp::Fp2 field(p);
    for (int t = 0; t < 25; ++t) {
      const Poly f = random_monic(rng, p, 1 + rng() % 7);
      ASSERT_EQ(fp::roots_in_fp2(f), static_cast<long>(brute_roots(field, f).size())) << f.str();
    }
  }
}

TEST(SqrtMod, Squares) {
  for (u64 p : {3, 5, 13, 17, 97, 101, 1009}) {
    for (u64 a = 1; a < p; ++a) {
      if (powmod(a, (p - 1) / 2, p) != 1) continue;
      const u64 r = fp::sqrt_mod(a, p);
      ASSERT_EQ(mulmod(r, r, p), a);
    }
  }
}

TEST(Supersingular, KnownSmallValues) {
  // j = 1728 for p = 7 and 11, j = 0 for p = 5 and 11
  EXPECT_EQ(fp::supersingular_polynomial(5), Poly(5, {0, 1}));
  EXPECT_EQ(fp::supersingular_polynomial(7), Poly(7, {7 - 1728 % 7, 1}));
  EXPECT_EQ(fp::supersingular_polynomial(11), Poly(11, {0, 11 - 1728 % 11, 1}));
  EXPECT_EQ(fp::supersingular_j_invariants(2).size(), 1u);
  EXPECT_EQ(fp::supersingular_j_invariants(3).size(), 1u);
}

TEST(Supersingular, AllLieInFp2AndPolynomialIsOverFp) {
  for (u64 p : {13, 37, 101, 163}) {
    const Poly ss = fp::supersingular_polynomial(p);
    EXPECT_EQ(fp::roots_in_fp2(ss), ss.degree());
    EXPECT_EQ(ss.degree(), static_cast<long>(fp::supersingular_j_invariants(p).size()));
  }
}
