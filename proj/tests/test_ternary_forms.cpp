#include <gtest/gtest.h>

#include <random>

#include "singmod/corpus.hpp"
#include "singmod/quaternion.hpp"
#include "singmod/ternary_forms.hpp"

using namespace singmod;

namespace {

const TernaryQF kSum3 = ternary_form(2, 2, 2, 0, 0, 0);
const TernaryQF kGross2 = ternary_form(8, 8, 6, 0, 4, 4);

// |v_i| <= sqrt(2 n (A^-1)_ii), then a plain triple loop.
std::vector<i64> box_counts(const TernaryQF& q, i64 max_n, bool primitive_only = false) {
  const Mat3 adj = adjugate(q.hessian);
  const i64 h = hessian_det(q);
  Vec3 box{};
  for (int i = 0; i < 3; ++i) box[i] = static_cast<i64>(isqrt(i128(2 * max_n * adj[i][i] / h + 1))) + 1;
  std::vector<i64> counts(static_cast<std::size_t>(max_n) + 1, 0);
  for (i64 x = -box[0]; x <= box[0]; ++x)
    for (i64 y = -box[1]; y <= box[1]; ++y)
      for (i64 z = -box[2]; z <= box[2]; ++z) {
        const i64 v = q.value({x, y, z});
        if (v > max_n) continue;
        if (primitive_only && std::gcd(std::gcd(x, y), z) != 1) continue;
        ++counts[static_cast<std::size_t>(v)];
      }
  return counts;
}

// min over primitive w of w^T adj(A) w, searched in the box where a minimizer must lie.
i64 dual_minimum_scan(const TernaryQF& q) {
  const Mat3 adj = adjugate(q.hessian);
  const i64 h = hessian_det(q);
  const i64 m = std::min({adj[0][0], adj[1][1], adj[2][2]});
  // adj^-1 = A / H, so w^T adj w <= m forces w_i^2 <= m A_ii / H
  Vec3 box{};
  for (int i = 0; i < 3; ++i) box[i] = static_cast<i64>(isqrt(i128(m * q.hessian[i][i] / h + 1))) + 1;
  i64 best = m;
  for (i64 x = -box[0]; x <= box[0]; ++x)
    for (i64 y = -box[1]; y <= box[1]; ++y)
      for (i64 z = -box[2]; z <= box[2]; ++z) {
        if (std::gcd(std::gcd(x, y), z) != 1) continue;
        best = std::min<i64>(best, static_cast<i64>(bilinear(adj, {x, y, z}, {x, y, z})));
      }
  return best;
}

i128 det_columns(const Vec3& a, const Vec3& b, const Vec3& c) {
  return det3(Mat3{{{a[0], b[0], c[0]}, {a[1], b[1], c[1]}, {a[2], b[2], c[2]}}});
}

}  // namespace

TEST(TernaryForm, RejectsInvalidHessians) {
  EXPECT_THROW(ternary_form(1, 2, 2, 0, 0, 0), Error);
  EXPECT_THROW(ternary_form(2, 2, 2, 3, 0, 0), Error);
  EXPECT_THROW(ternary_form(2, 2, -2, 0, 0, 0), Error);
}

TEST(HessianDet, Examples) {
  EXPECT_EQ(hessian_det(kSum3), 8);
  EXPECT_EQ(hessian_det(kGross2), 128);
  EXPECT_EQ(hessian_det(ternary_form(2, 4, 6, 0, 0, 0)), 48);
  EXPECT_EQ(covolume_squared(kGross2) * Rational(8), Rational(128));
}

TEST(Level, Examples) {
  EXPECT_EQ(level(kSum3), 4);
  EXPECT_EQ(level(kGross2), 8);
  EXPECT_EQ(level(gross_lattice(163).form), 4 * 163);
}

TEST(Level, MatchesDefinitionByScan) {
  for (const auto& q : random_ternary_forms(17, 40, 8)) {
    const Mat3 adj = adjugate(q.hessian);
    const i64 h = hessian_det(q);
    i64 n = 1;
    auto ok = [&](i64 n) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if ((n * adj[i][j]) % h != 0) return false;
          if (i == j && ((n * adj[i][j]) / h) % 2 != 0) return false;
        }
      return true;
    };
    while (!ok(n)) ++n;
    ASSERT_EQ(level(q), n) << q;
  }
}

TEST(CountRepresentations, Examples) {
  EXPECT_EQ(count_representations(kSum3, 0), 1);
  EXPECT_EQ(count_representations(kSum3, 1), 6);
  EXPECT_EQ(count_representations(kSum3, 5), 24);
  EXPECT_EQ(count_representations(kGross2, 3), 8);
}

TEST(CountRepresentations, MatchesBoxEnumeration) {
  for (const auto& q : random_ternary_forms(23, 30, 12)) {
    const auto brute = box_counts(q, 60);
    const auto fast = representation_numbers(q, 60);
    for (i64 n = 0; n <= 60; ++n) {
      ASSERT_EQ(fast[static_cast<std::size_t>(n)], brute[static_cast<std::size_t>(n)]) << q << " n=" << n;
      ASSERT_EQ(count_representations(q, n), brute[static_cast<std::size_t>(n)]) << q << " n=" << n;
    }
  }
}

TEST(CountRepresentations, UnimodularInvariance) {
  std::mt19937_64 rng(31);
  for (const auto& q : random_ternary_forms(29, 10, 12)) {
    const auto base = representation_numbers(q, 80);
    for (int trial = 0; trial < 4; ++trial) {
      const Mat3 u = random_unimodular(rng);
      ASSERT_EQ(det3(u) * det3(u), 1);
      ASSERT_EQ(representation_numbers(change_basis(q, u), 80), base) << q;
    }
  }
}

TEST(CountPrimitive, Examples) {
  for (auto method : {PrimitiveMethod::Moebius, PrimitiveMethod::GcdFilter}) {
    EXPECT_EQ(count_primitive(kSum3, 4, method), 0);
    EXPECT_EQ(count_primitive(kGross2, 3, method), 8);
    // every representation of 4 by S_2 is primitive since S_2 does not represent 1
    EXPECT_EQ(count_primitive(kGross2, 4, method), 6);
  }
  EXPECT_EQ(count_representations(kGross2, 1), 0);
}

TEST(CountPrimitive, MethodsAgreeWithBoxOracle) {
  for (const auto& q : random_ternary_forms(37, 25, 12)) {
    const auto brute = box_counts(q, 50, true);
    for (i64 n = 1; n <= 50; ++n) {
      ASSERT_EQ(count_primitive(q, n, PrimitiveMethod::Moebius), brute[static_cast<std::size_t>(n)]) << q << " n=" << n;
      ASSERT_EQ(count_primitive(q, n, PrimitiveMethod::GcdFilter), brute[static_cast<std::size_t>(n)]) << q << " n=" << n;
    }
  }
}

TEST(MinimalSublattice, SumOfSquares) {
  const auto s = minimal_binary_sublattice(kSum3);
  EXPECT_EQ(s.restricted_det, 4);  // covol(R)^2 = r / 4 = 1
  EXPECT_EQ(s.restricted_form, (BinaryQF{1, 0, 1}));
  EXPECT_TRUE(s.satisfies_hermite_rankin(8));
}

TEST(MinimalSublattice, GrossTwo) {
  const auto s = minimal_binary_sublattice(kGross2);
  EXPECT_EQ(s.restricted_det, dual_minimum_scan(kGross2));
  // covol(R)^6 <= 4 covol(Q)^4 with covol(Q)^2 = 16
  EXPECT_TRUE(s.satisfies_hermite_rankin(128));
}

TEST(MinimalSublattice, SkewDiagonal) {
  const auto s = minimal_binary_sublattice(ternary_form(2, 2, 100, 0, 0, 0));
  EXPECT_EQ(s.restricted_det, 4);
  EXPECT_EQ(s.dual_vector, (Vec3{0, 0, 1}));
  EXPECT_EQ(s.restricted_form, (BinaryQF{1, 0, 1}));
  EXPECT_TRUE(s.satisfies_hermite_rankin(200));
}

TEST(MinimalSublattice, StructureOnCorpus) {
  for (const auto& q : random_ternary_forms(41, 120, 12)) {
    const auto s = minimal_binary_sublattice(q);
    const i64 h = hessian_det(q);
    ASSERT_EQ(s.restricted_det, dual_minimum_scan(q)) << q;
    ASSERT_TRUE(s.satisfies_hermite_rankin(h)) << q;
    const i128 d = det_columns(s.plane_basis[0], s.plane_basis[1], s.transversal);
    ASSERT_TRUE(d == 1 || d == -1) << q;
    for (const auto& b : s.plane_basis) {
      ASSERT_EQ(s.dual_vector[0] * b[0] + s.dual_vector[1] * b[1] + s.dual_vector[2] * b[2], 0);
    }
    ASSERT_EQ(s.restricted_form.discriminant(), -s.restricted_det);
    ASSERT_EQ(s.quotient_covol_squared, Rational(h, 2 * s.restricted_det));
    for (i64 t = -3; t <= 3; ++t) ASSERT_EQ(slice_polynomial(s, t).discriminant(), -s.restricted_det);
  }
}

TEST(SlicesCount, Examples) {
  const auto r = slices_count(kSum3, 5);
  EXPECT_EQ(r.total, 24);
  ASSERT_EQ(r.per_slice.size(), 5u);
  EXPECT_EQ(r.per_slice.front().first, -2);
  EXPECT_EQ(r.per_slice.back().first, 2);
  EXPECT_EQ(slices_count(kGross2, 3).total, 8);
  EXPECT_EQ(slices_count(kGross2, 0).total, 1);
}

TEST(SlicesCount, MatchesEnumerationOnCorpus) {
  for (const auto& q : random_ternary_forms(43, 40, 12)) {
    const auto brute = box_counts(q, 120);
    const auto s = minimal_binary_sublattice(q);
    for (i64 n = 0; n <= 120; ++n) ASSERT_EQ(slices_count(q, n, s).total, brute[static_cast<std::size_t>(n)]) << q << " n=" << n;
  }
}

TEST(HermiteDirichlet, Examples) {
  const auto r = hermite_dirichlet_bound(kSum3, 5);
  EXPECT_EQ(r.count, 24);
  EXPECT_EQ(r.sigma0, 2);
  // k = floor(sqrt(5) 4^{-1/6}) = floor(1.77) = 1, m = floor(16^{2/3}) = 6
  EXPECT_EQ(r.k, 1);
  EXPECT_EQ(r.m, 6);
  EXPECT_EQ(r.sigma0_tilde, sigma0_tilde(i64{180}));
  EXPECT_EQ(r.bound, 6 * (2 + 2 * 1 * sigma0_tilde(i64{180})));
  EXPECT_TRUE(r.holds);

  const auto g163 = hermite_dirichlet_bound(gross_lattice(163).form, 163);
  EXPECT_TRUE(g163.holds);
  // q = 850208 and 2 n^3 = 8661494, so k = 1
  EXPECT_EQ(g163.k, 1);
  EXPECT_EQ(g163.bound, 6 * (sigma0(163) + 2 * sigma0_tilde(u128(g163.m) * u128(g163.m) * 163)));

  const auto g2 = hermite_dirichlet_bound(kGross2, 3);
  EXPECT_EQ(g2.count, 8);
  EXPECT_TRUE(g2.holds);
}

TEST(HermiteDirichlet, IntegerFloorsMatchDefinitions) {
  for (i64 q : {8, 48, 128, 1000, 850208}) {
    const i64 m = hermite_dirichlet_m(q);
    EXPECT_LE(i128(m) * m * m, i128(2 * q) * (2 * q));
    EXPECT_GT(i128(m + 1) * (m + 1) * (m + 1), i128(2 * q) * (2 * q));
    for (i64 n : {1, 5, 77, 2000}) {
      const i64 k = hermite_dirichlet_k(n, q);
      auto pow6 = [](i128 x) { return x * x * x * x * x * x; };
      EXPECT_LE(pow6(k) * q, 2 * i128(n) * n * n);
      EXPECT_GT(pow6(k + 1) * q, 2 * i128(n) * n * n);
    }
  }
}

TEST(Automorphs, Examples) {
  EXPECT_EQ(automorph_group_order(kSum3), 48);
  EXPECT_EQ(automorph_group_order(kGross2), 48);
  EXPECT_EQ(automorph_group_order(ternary_form(2, 4, 6, 0, 0, 0)), 8);
}

TEST(Automorphs, InvariantUnderBasisChange) {
  std::mt19937_64 rng(47);
  for (const auto& q : random_ternary_forms(53, 8, 10)) {
    const i64 n = automorph_group_order(q);
    EXPECT_EQ(n % 2, 0);
    EXPECT_EQ(automorph_group_order(change_basis(q, random_unimodular(rng))), n) << q;
  }
}
