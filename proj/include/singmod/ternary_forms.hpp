#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "singmod/arith.hpp"
#include "singmod/binary_forms.hpp"
#include "singmod/quad_poly.hpp"

namespace singmod {

using Vec3 = std::array<i64, 3>;
using Mat3 = std::array<std::array<i64, 3>, 3>;

inline i128 det3(const Mat3& m) {
  return i128(m[0][0]) * (i128(m[1][1]) * m[2][2] - i128(m[1][2]) * m[2][1]) -
         i128(m[0][1]) * (i128(m[1][0]) * m[2][2] - i128(m[1][2]) * m[2][0]) +
         i128(m[0][2]) * (i128(m[1][0]) * m[2][1] - i128(m[1][1]) * m[2][0]);
}

/// Adjugate (transpose of the cofactor matrix); adj(A) A = det(A) I.
inline Mat3 adjugate(const Mat3& m) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      i128 v = i128(m[r0][c0]) * m[r1][c1] - i128(m[r0][c1]) * m[r1][c0];
      r[i][j] = static_cast<i64>(v);
    }
  }
  return r;
}

inline Mat3 transpose(const Mat3& m) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
  return r;
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      i128 acc = 0;
      for (int k = 0; k < 3; ++k) acc += i128(a[i][k]) * b[k][j];
      r[i][j] = static_cast<i64>(acc);
    }
  return r;
}

inline i128 bilinear(const Mat3& m, const Vec3& x, const Vec3& y) {
  i128 acc = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += i128(x[i]) * m[i][j] * y[j];
  return acc;
}

/// Positive definite integral ternary form Q(x) = x^T A x / 2, A the Hessian (even diagonal).
struct TernaryQF {
  Mat3 hessian{};

  i64 value(const Vec3& v) const { return static_cast<i64>(bilinear(hessian, v, v) / 2); }

  /// Short tuple "a11,a22,a33,a12,a13,a23".
  std::array<i64, 6> entries() const {
    return {hessian[0][0], hessian[1][1], hessian[2][2], hessian[0][1], hessian[0][2], hessian[1][2]};
  }

  friend bool operator==(const TernaryQF&, const TernaryQF&) = default;
  friend std::ostream& operator<<(std::ostream& os, const TernaryQF& q) {
    auto e = q.entries();
    return os << "[" << e[0] << "," << e[1] << "," << e[2] << "," << e[3] << "," << e[4] << "," << e[5] << "]";
  }
};

inline bool is_positive_definite(const Mat3& m) {
  if (m[0][0] <= 0) return false;
  if (i128(m[0][0]) * m[1][1] - i128(m[0][1]) * m[1][0] <= 0) return false;
  return det3(m) > 0;
}

inline TernaryQF ternary_form(const Mat3& hessian) {
  for (int i = 0; i < 3; ++i) {
    if (hessian[i][i] % 2 != 0) throw Error(ErrorCode::InvalidArgument, "Hessian diagonal must be even");
    for (int j = 0; j < 3; ++j) {
      if (hessian[i][j] != hessian[j][i]) throw Error(ErrorCode::InvalidArgument, "Hessian must be symmetric");
    }
  }
  if (!is_positive_definite(hessian)) throw Error(ErrorCode::NotPositiveDefinite, "ternary form is not positive definite");
  return TernaryQF{hessian};
}

inline TernaryQF ternary_form(i64 a11, i64 a22, i64 a33, i64 a12, i64 a13, i64 a23) {
  return ternary_form(Mat3{{{a11, a12, a13}, {a12, a22, a23}, {a13, a23, a33}}});
}

/// Q composed with the basis change x -> U x, i.e. Hessian U^T A U.
inline TernaryQF change_basis(const TernaryQF& q, const Mat3& u) {
  return ternary_form(mat_mul(transpose(u), mat_mul(q.hessian, u)));
}

inline i64 hessian_det(const TernaryQF& q) { return static_cast<i64>(det3(q.hessian)); }

/// Smallest N > 0 with N A^{-1} integral with even diagonal (A nondegenerate, any signature).
inline i64 level(const Mat3& hessian) {
  i64 h = static_cast<i64>(det3(hessian));
  if (h == 0) throw Error(ErrorCode::InvalidArgument, "level of a degenerate form");
  if (h < 0) h = -h;
  const Mat3 adj = adjugate(hessian);
  i64 n = 1;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // N adj_ij / det must be an integer, and even on the diagonal
      i64 modulus = (i == j) ? 2 * h : h;
      n = std::lcm(n, modulus / std::gcd(modulus, adj[i][j]));
    }
  }
  return n;
}

inline i64 level(const TernaryQF& q) { return level(q.hessian); }

/// covol(Q)^2 = H / 8 as an exact fraction.
inline Rational covolume_squared(const TernaryQF& q) { return Rational(hessian_det(q), 8); }

// ---------------------------------------------------------------------------
// Exact enumeration. For a positive definite symmetric M, the vectors with v^T M v <= bound
// are visited through nested completions of squares:
//   M00 * v^T M v = (M00 x1 + M01 x2 + M02 x3)^2 + D12 x2^2 + 2 E x2 x3 + F x3^2,
//   D12 = M00 M11 - M01^2, E = M00 M12 - M01 M02, F = M00 M22 - M02^2,
// and the x3 range comes from x3^2 det(M) <= bound D12.

namespace detail {

template <class Visit>
void enumerate_ellipsoid(const Mat3& m, i128 bound, Visit&& visit) {
  if (bound < 0) return;
  const i128 m00 = m[0][0], m01 = m[0][1], m02 = m[0][2], m11 = m[1][1], m12 = m[1][2], m22 = m[2][2];
  const i128 d12 = m00 * m11 - m01 * m01;
  const i128 e = m00 * m12 - m01 * m02;
  const i128 f = m00 * m22 - m02 * m02;
  const i128 det = det3(m);
  const i128 x3_max = isqrt(floor_div(bound * d12, det));
  for (i128 x3 = -x3_max; x3 <= x3_max; ++x3) {
    const IntRange r2 = quadratic_le_zero(d12, 2 * e * x3, f * x3 * x3 - m00 * bound);
    for (i128 x2 = r2.lo; x2 <= r2.hi; ++x2) {
      const i128 lin = 2 * (m01 * x2 + m02 * x3);
      const i128 rest = m11 * x2 * x2 + 2 * m12 * x2 * x3 + m22 * x3 * x3;
      const IntRange r1 = quadratic_le_zero(m00, lin, rest - bound);
      for (i128 x1 = r1.lo; x1 <= r1.hi; ++x1) {
        visit(Vec3{static_cast<i64>(x1), static_cast<i64>(x2), static_cast<i64>(x3)}, m00 * x1 * x1 + lin * x1 + rest);
      }
    }
  }
}

// Vectors with v^T M v == target exactly; the innermost variable is solved, not scanned.
template <class Visit>
void enumerate_level_set(const Mat3& m, i128 target, Visit&& visit) {
  if (target < 0) return;
  if (target == 0) {
    visit(Vec3{0, 0, 0});
    return;
  }
  const i128 m00 = m[0][0], m01 = m[0][1], m02 = m[0][2], m11 = m[1][1], m12 = m[1][2], m22 = m[2][2];
  const i128 d12 = m00 * m11 - m01 * m01;
  const i128 e = m00 * m12 - m01 * m02;
  const i128 f = m00 * m22 - m02 * m02;
  const i128 det = det3(m);
  const i128 x3_max = isqrt(floor_div(target * d12, det));
  for (i128 x3 = -x3_max; x3 <= x3_max; ++x3) {
    const IntRange r2 = quadratic_le_zero(d12, 2 * e * x3, f * x3 * x3 - m00 * target);
    for (i128 x2 = r2.lo; x2 <= r2.hi; ++x2) {
      const i128 b = 2 * (m01 * x2 + m02 * x3);
      const i128 c = m11 * x2 * x2 + 2 * m12 * x2 * x3 + m22 * x3 * x3 - target;
      const i128 disc = b * b - 4 * m00 * c;
      i128 s;
      if (!is_square(disc, &s)) continue;
      for (i128 num : {-b + s, -b - s}) {
        if (num % (2 * m00) == 0) {
          visit(Vec3{static_cast<i64>(num / (2 * m00)), static_cast<i64>(x2), static_cast<i64>(x3)});
        }
        if (s == 0) break;
      }
    }
  }
}

}  // namespace detail

/// Calls visit(v) for every v in Z^3 with Q(v) = n.
template <class Visit>
void for_each_representation(const TernaryQF& q, i64 n, Visit&& visit) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "representation count needs n >= 0");
  detail::enumerate_level_set(q.hessian, 2 * i128(n), visit);
}

/// r(Q, n); r(Q, 0) = 1 (the origin).
inline i64 count_representations(const TernaryQF& q, i64 n) {
  i64 count = 0;
  for_each_representation(q, n, [&](const Vec3&) { ++count; });
  return count;
}

/// r(Q, m) for 0 <= m <= max_n from one pass over the ellipsoid Q <= max_n.
inline std::vector<i64> representation_numbers(const TernaryQF& q, i64 max_n) {
  if (max_n < 0) throw Error(ErrorCode::InvalidArgument, "max_n must be >= 0");
  std::vector<i64> counts(static_cast<std::size_t>(max_n) + 1, 0);
  detail::enumerate_ellipsoid(q.hessian, 2 * i128(max_n), [&](const Vec3&, i128 twice) { ++counts[static_cast<std::size_t>(twice / 2)]; });
  return counts;
}

enum class PrimitiveMethod { Moebius, GcdFilter };

/// r'(Q, n): representations with coprime coordinates.
inline i64 count_primitive(const TernaryQF& q, i64 n, PrimitiveMethod method) {
  require_positive(n, "count_primitive");
  if (method == PrimitiveMethod::GcdFilter) {
    i64 count = 0;
    for_each_representation(q, n, [&](const Vec3& v) {
      if (std::gcd(std::gcd(v[0], v[1]), v[2]) == 1) ++count;
    });
    return count;
  }
  i64 total = 0;
  for (i64 f = 1; f * f <= n; ++f) {
    if (n % (f * f) != 0) continue;
    int mu = moebius(f);
    if (mu != 0) total += mu * count_representations(q, n / (f * f));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Minimal rank-2 sublattice and slices.

struct SliceDecomposition {
  std::array<Vec3, 2> plane_basis{};
  Vec3 transversal{};
  /// Primitive dual vector w with plane = ker(w) and w . transversal = 1.
  Vec3 dual_vector{};
  /// Hessian of Q in the basis (plane_basis[0], plane_basis[1], transversal).
  Mat3 adapted_hessian{};
  /// R = Q restricted to the plane.
  BinaryQF restricted_form{};
  /// r = det of the Hessian of R = -disc(R); covol(R)^2 = r / 4.
  i64 restricted_det = 0;
  /// covol(S)^2 = covol(Q)^2 / covol(R)^2 = H / (2 r).
  Rational quotient_covol_squared{};

  /// Hermite-Rankin check covol(R)^6 <= 4 covol(Q)^4, i.e. r^3 <= 4 H^2.
  bool satisfies_hermite_rankin(i64 h) const {
    return i128(restricted_det) * restricted_det * restricted_det <= 4 * i128(h) * h;
  }
};

namespace detail {

// Sign-normalized so the first nonzero coordinate is positive.
inline Vec3 normalize_sign(Vec3 v) {
  for (i64 x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

// Unimodular U with w U = (0, 0, 1) for primitive w (row vector), via column Euclid steps.
inline Mat3 complete_to_unimodular(const Vec3& w) {
  Mat3 u{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  Vec3 r = w;
  auto col_op = [&](int dst, int src, i64 k) {  // column dst -= k * column src
    for (int i = 0; i < 3; ++i) u[i][dst] -= k * u[i][src];
    r[dst] -= k * r[src];
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < 3; ++i) std::swap(u[i][a], u[i][b]);
    std::swap(r[a], r[b]);
  };
  // gather the gcd into position 2
  for (int src : {0, 1}) {
    while (r[src] != 0) {
      i64 k = r[2] / r[src];
      col_op(2, src, k);
      col_swap(2, src);
    }
  }
  if (r[2] == -1) {
    for (int i = 0; i < 3; ++i) u[i][2] = -u[i][2];
    r[2] = 1;
  }
  if (r[2] != 1) throw Error(ErrorCode::InvalidArgument, "dual vector is not primitive");
  return u;
}

}  // namespace detail

/// The primitive rank-2 sublattice of least co-volume, as the kernel of a shortest vector of adj(A).
inline SliceDecomposition minimal_binary_sublattice(const TernaryQF& q) {
  const Mat3 adj = adjugate(q.hessian);
  // e_i gives an upper bound for the minimum, and every minimizer lies inside it
  i128 bound = std::min({adj[0][0], adj[1][1], adj[2][2]});
  i128 best = bound + 1;
  Vec3 best_w{};
  detail::enumerate_ellipsoid(adj, bound, [&](const Vec3& v, i128 value) {
    if (value == 0) return;
    Vec3 w = detail::normalize_sign(v);
    if (value < best || (value == best && w < best_w)) {
      best = value;
      best_w = w;
    }
  });
  SliceDecomposition s;
  s.dual_vector = best_w;
  const Mat3 u = detail::complete_to_unimodular(best_w);
  for (int k = 0; k < 2; ++k) s.plane_basis[k] = Vec3{u[0][k], u[1][k], u[2][k]};
  s.transversal = Vec3{u[0][2], u[1][2], u[2][2]};
  s.adapted_hessian = mat_mul(transpose(u), mat_mul(q.hessian, u));
  const auto& a = s.adapted_hessian;
  s.restricted_form = BinaryQF{a[0][0] / 2, a[0][1], a[1][1] / 2};
  s.restricted_det = static_cast<i64>(i128(a[0][0]) * a[1][1] - i128(a[0][1]) * a[0][1]);
  if (s.restricted_det != static_cast<i64>(best)) {
    throw Error(ErrorCode::InvalidArgument, "sublattice determinant does not match the dual norm");
  }
  s.quotient_covol_squared = Rational(hessian_det(q), 2 * s.restricted_det);
  return s;
}

/// Slice polynomial P_t(y1, y2) = Q(y1 b1 + y2 b2 + t u).
inline IntegerValuedQP slice_polynomial(const SliceDecomposition& s, i64 t) {
  const auto& a = s.adapted_hessian;
  return IntegerValuedQP{a[0][0], a[0][1], a[1][1], 2 * t * a[0][2], 2 * t * a[1][2], a[2][2] / 2 * t * t};
}

/// Largest slice index that can meet Q = n: t^2 <= 2 r n / H.
inline i64 slice_bound(const SliceDecomposition& s, i64 h, i64 n) {
  return static_cast<i64>(isqrt(floor_div(2 * i128(s.restricted_det) * n, h)));
}

struct SlicesReport {
  i64 total = 0;
  std::vector<std::pair<i64, i64>> per_slice;  // (t, r(P_t, n))
};

/// r(Q, n) as the sum over slices |t| <= sqrt(n) / covol(S) of r(P_t, n).
inline SlicesReport slices_count(const TernaryQF& q, i64 n, const SliceDecomposition& s) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "slices_count needs n >= 0");
  SlicesReport report;
  if (n == 0) {
    report.total = 1;
    report.per_slice.emplace_back(0, 1);
    return report;
  }
  const i64 t_max = slice_bound(s, hessian_det(q), n);
  for (i64 t = -t_max; t <= t_max; ++t) {
    i64 c = count_representations_poly(slice_polynomial(s, t), n);
    report.per_slice.emplace_back(t, c);
    report.total += c;
  }
  return report;
}

inline SlicesReport slices_count(const TernaryQF& q, i64 n) { return slices_count(q, n, minimal_binary_sublattice(q)); }

// ---------------------------------------------------------------------------
// Hermite-Dirichlet bound r(Q, n) <= C (sigma0(n) + 2 k sigma0_tilde(m^2 n)),
// C = 6, k = floor(n^{1/2} (q/2)^{-1/6}), m = floor((2q)^{2/3}), q = H(Q).

struct HermiteDirichletReport {
  i64 count = 0;
  i64 sigma0 = 0;
  i64 k = 0;
  i64 m = 0;
  i64 sigma0_tilde = 0;
  i64 bound = 0;
  bool holds = false;
};

inline constexpr i64 kHermiteDirichletConstant = 6;

/// k = max{k >= 0 : k^6 q <= 2 n^3}.
inline i64 hermite_dirichlet_k(i64 n, i64 q) {
  const u128 rhs = u128(2) * u128(n) * u128(n) * u128(n);
  return integer_root_floor(rhs / u128(q), 6);
}

/// m = max{m >= 0 : m^3 <= (2q)^2}.
inline i64 hermite_dirichlet_m(i64 q) { return integer_root_floor(u128(2 * q) * u128(2 * q), 3); }

inline HermiteDirichletReport hermite_dirichlet_report(i64 count, i64 n, i64 q) {
  require_positive(n, "hermite_dirichlet_bound");
  HermiteDirichletReport r;
  r.count = count;
  r.sigma0 = sigma0(n);
  r.k = hermite_dirichlet_k(n, q);
  r.m = hermite_dirichlet_m(q);
  r.sigma0_tilde = sigma0_tilde(u128(r.m) * u128(r.m) * u128(n));
  r.bound = kHermiteDirichletConstant * (r.sigma0 + 2 * r.k * r.sigma0_tilde);
  r.holds = r.count <= r.bound;
  return r;
}

inline HermiteDirichletReport hermite_dirichlet_bound(const TernaryQF& q, i64 n) {
  require_positive(n, "hermite_dirichlet_bound");
  return hermite_dirichlet_report(count_representations(q, n), n, hessian_det(q));
}

// ---------------------------------------------------------------------------

/// Vectors v with Q(v) = n (both signs).
inline std::vector<Vec3> vectors_of_norm(const TernaryQF& q, i64 n) {
  std::vector<Vec3> out;
  for_each_representation(q, n, [&](const Vec3& v) { out.push_back(v); });
  return out;
}

/// |O(Q)|: integer matrices M with M^T A M = A, columns matched against the diagonal norms.
inline i64 automorph_group_order(const TernaryQF& q) {
  const Mat3& a = q.hessian;
  std::array<std::vector<Vec3>, 3> candidates;
  for (int i = 0; i < 3; ++i) candidates[i] = vectors_of_norm(q, a[i][i] / 2);
  i64 count = 0;
  for (const auto& v0 : candidates[0]) {
    for (const auto& v1 : candidates[1]) {
      if (bilinear(a, v0, v1) != a[0][1]) continue;
      for (const auto& v2 : candidates[2]) {
        if (bilinear(a, v0, v2) != a[0][2] || bilinear(a, v1, v2) != a[1][2]) continue;
        ++count;
      }
    }
  }
  return count;
}

}  // namespace singmod
