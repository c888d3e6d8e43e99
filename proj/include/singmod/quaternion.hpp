#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "singmod/arith.hpp"
#include "singmod/quad_poly.hpp"
#include "singmod/ternary_forms.hpp"

namespace singmod {

/// Rational quaternion algebra (a, b): i^2 = a, j^2 = b, k = ij = -ji, k^2 = -ab.
struct QuaternionAlgebra {
  i64 a = -1;
  i64 b = -1;

  bool definite() const { return a < 0 && b < 0; }
  friend bool operator==(const QuaternionAlgebra&, const QuaternionAlgebra&) = default;
};

/// Coordinates in the basis 1, i, j, k.
using Quaternion = std::array<Rational, 4>;

inline Quaternion quaternion(i64 x0, i64 x1, i64 x2, i64 x3, i64 denominator = 1) {
  return {Rational(x0, denominator), Rational(x1, denominator), Rational(x2, denominator), Rational(x3, denominator)};
}

inline Quaternion multiply(const QuaternionAlgebra& alg, const Quaternion& x, const Quaternion& y) {
  const Rational a(alg.a), b(alg.b), ab(alg.a * alg.b);
  return {
      x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - ab * x[3] * y[3],
      x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
      x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
      x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1],
  };
}

inline Quaternion conjugate(const Quaternion& x) { return {x[0], -x[1], -x[2], -x[3]}; }

inline Quaternion operator+(const Quaternion& x, const Quaternion& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
}

inline Quaternion scale(const Quaternion& x, const Rational& s) { return {x[0] * s, x[1] * s, x[2] * s, x[3] * s}; }

struct TraceNorm {
  Rational trace;
  Rational norm;
};

/// Tr(x) = x + conj(x) and Nm(x) = x conj(x).
inline TraceNorm reduced_norm_trace(const QuaternionAlgebra& alg, const Quaternion& x) {
  const Rational a(alg.a), b(alg.b), ab(alg.a * alg.b);
  return {x[0] * Rational(2), x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + ab * x[3] * x[3]};
}

/// Tr(x conj(y)).
inline Rational trace_pairing(const QuaternionAlgebra& alg, const Quaternion& x, const Quaternion& y) {
  return multiply(alg, x, conjugate(y))[0] * Rational(2);
}

// ---------------------------------------------------------------------------
// Integer lattices inside Q^n, kept in echelon form: row r has its last nonzero entry in
// column r, with positive pivot; entries left of a pivot are reduced into [0, pivot).

namespace detail {

using IntRow = std::vector<i128>;

inline i128 abs128(i128 x) { return x < 0 ? -x : x; }

/// Echelon basis of the Z-span of rows (each of length n). Rows of the result: rank many.
/// The returned rows satisfy: row r is zero in columns > pivot_col[r].
inline std::vector<IntRow> lower_echelon(std::vector<IntRow> rows, std::size_t n) {
  std::vector<IntRow> out;
  std::vector<IntRow> pool = std::move(rows);
  for (std::size_t col = n; col-- > 0;) {
    // Euclid on column col among pool rows
    while (true) {
      std::size_t pivot = pool.size();
      for (std::size_t r = 0; r < pool.size(); ++r) {
        if (pool[r][col] == 0) continue;
        if (pivot == pool.size() || abs128(pool[r][col]) < abs128(pool[pivot][col])) pivot = r;
      }
      if (pivot == pool.size()) break;
      bool done = true;
      for (std::size_t r = 0; r < pool.size(); ++r) {
        if (r == pivot || pool[r][col] == 0) continue;
        i128 k = pool[r][col] / pool[pivot][col];
        for (std::size_t c = 0; c < n; ++c) pool[r][c] -= k * pool[pivot][c];
        if (pool[r][col] != 0) done = false;
      }
      if (done) {
        IntRow row = pool[pivot];
        pool.erase(pool.begin() + static_cast<long>(pivot));
        if (row[col] < 0)
          for (auto& x : row) x = -x;
        out.push_back(std::move(row));
        break;
      }
    }
  }
  // out holds pivots for columns n-1, n-2, ... (skipping empty columns); reverse to ascending order
  std::reverse(out.begin(), out.end());
  auto pivot_col = [&](const IntRow& row) {
    for (std::size_t c = n; c-- > 0;)
      if (row[c] != 0) return c;
    return n;
  };
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (std::size_t s = r; s-- > 0;) {
      const std::size_t pc = pivot_col(out[s]);
      i128 k = floor_div(out[r][pc], out[s][pc]);
      if (k == 0) continue;
      for (std::size_t c = 0; c < n; ++c) out[r][c] -= k * out[s][c];
    }
  }
  return out;
}

/// Integer coordinates of v in an echelon basis of full column support, or nothing.
inline std::optional<std::vector<i128>> solve_echelon(const std::vector<IntRow>& basis, IntRow v, std::size_t n) {
  std::vector<i128> coeffs(basis.size(), 0);
  for (std::size_t r = basis.size(); r-- > 0;) {
    std::size_t pc = n;
    for (std::size_t c = n; c-- > 0;)
      if (basis[r][c] != 0) {
        pc = c;
        break;
      }
    // columns above pc must already be cleared
    for (std::size_t c = pc + 1; c < n; ++c)
      if (v[c] != 0) return std::nullopt;
    if (v[pc] % basis[r][pc] != 0) return std::nullopt;
    coeffs[r] = v[pc] / basis[r][pc];
    for (std::size_t c = 0; c < n; ++c) v[c] -= coeffs[r] * basis[r][c];
  }
  for (auto x : v)
    if (x != 0) return std::nullopt;
  return coeffs;
}

inline i64 common_denominator(const std::vector<Quaternion>& elems) {
  i64 d = 1;
  for (const auto& e : elems)
    for (const auto& x : e) d = std::lcm(d, x.denominator());
  return d;
}

inline IntRow scaled_row(const Quaternion& x, i64 d) {
  IntRow row(4);
  for (int c = 0; c < 4; ++c) row[c] = static_cast<i128>((x[c] * Rational(d)).numerator());
  return row;
}

inline Quaternion unscaled(const IntRow& row, i64 d) {
  Quaternion q;
  for (int c = 0; c < 4; ++c) q[c] = Rational(static_cast<i64>(row[c]), d);
  return q;
}

}  // namespace detail

/// Z-lattice of rank 4 in the algebra, given by a basis with rational coordinates.
struct QuaternionOrder {
  QuaternionAlgebra algebra;
  std::vector<Quaternion> basis;
};

/// Canonical echelon basis of the Z-span of elems (rank may be < 4).
inline std::vector<Quaternion> canonical_basis(const std::vector<Quaternion>& elems) {
  const i64 d = detail::common_denominator(elems);
  std::vector<detail::IntRow> rows;
  for (const auto& e : elems) rows.push_back(detail::scaled_row(e, d));
  std::vector<Quaternion> out;
  for (const auto& row : detail::lower_echelon(rows, 4)) out.push_back(detail::unscaled(row, d));
  return out;
}

inline bool lattice_contains(const std::vector<Quaternion>& basis, const Quaternion& x) {
  std::vector<Quaternion> all = basis;
  all.push_back(x);
  const i64 d = detail::common_denominator(all);
  std::vector<detail::IntRow> rows;
  for (const auto& e : basis) rows.push_back(detail::scaled_row(e, d));
  return detail::solve_echelon(detail::lower_echelon(rows, 4), detail::scaled_row(x, d), 4).has_value();
}

/// Checks rank 4, 1 in O and closure under products; returns O with its canonical basis.
inline QuaternionOrder verify_order(const QuaternionOrder& order) {
  std::vector<Quaternion> basis = canonical_basis(order.basis);
  if (basis.size() != 4) throw Error(ErrorCode::RankDeficient, "order basis has rank " + std::to_string(basis.size()));
  if (!lattice_contains(basis, quaternion(1, 0, 0, 0))) throw Error(ErrorCode::MissingUnit, "1 is not in the lattice");
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      if (!lattice_contains(basis, multiply(order.algebra, x, y))) {
        throw Error(ErrorCode::NotClosed, "lattice is not closed under multiplication");
      }
    }
  }
  return {order.algebra, std::move(basis)};
}

namespace detail {

inline Rational det4(std::array<std::array<Rational, 4>, 4> m) {
  Rational det(1);
  for (int c = 0; c < 4; ++c) {
    int pivot = -1;
    for (int r = c; r < 4; ++r)
      if (m[r][c] != Rational(0)) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 4; ++r) {
      Rational k = m[r][c] / m[c][c];
      for (int cc = c; cc < 4; ++cc) m[r][cc] -= k * m[c][cc];
    }
  }
  return det;
}

}  // namespace detail

/// sqrt |det Tr(b_i conj(b_j))| for a valid order.
inline i64 reduced_discriminant(const QuaternionOrder& order) {
  if (order.basis.size() != 4) throw Error(ErrorCode::RankDeficient, "order basis must have 4 elements");
  std::array<std::array<Rational, 4>, 4> gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram[i][j] = trace_pairing(order.algebra, order.basis[i], order.basis[j]);
  Rational det = detail::det4(gram);
  if (det < Rational(0)) det = -det;
  i128 root;
  if (det.denominator() != 1 || !is_square(det.numerator(), &root)) {
    throw Error(ErrorCode::NonSquareDiscriminant, "trace-form determinant is not a square integer");
  }
  return static_cast<i64>(root);
}

inline QuaternionOrder hurwitz_order() {
  return {{-1, -1}, {quaternion(1, 0, 0, 0), quaternion(0, 1, 0, 0), quaternion(0, 0, 1, 0), quaternion(1, 1, 1, 1, 2)}};
}

inline QuaternionOrder lipschitz_order() {
  return {{-1, -1}, {quaternion(1, 0, 0, 0), quaternion(0, 1, 0, 0), quaternion(0, 0, 1, 0), quaternion(0, 0, 0, 1)}};
}

inline constexpr i64 kAuxiliaryPrimeBound = 1000;

/// Smallest prime q = 3 (mod 4) with (p|q) = -1, as needed for p = 1 (mod 4).
inline i64 auxiliary_prime(i64 p) {
  for (i64 q = 3; q <= kAuxiliaryPrimeBound; q += 4) {
    if (is_prime(q) && kronecker(p, q) == -1) return q;
  }
  throw Error(ErrorCode::AuxiliaryPrimeNotFound, "no auxiliary prime below " + std::to_string(kAuxiliaryPrimeBound) +
                                                      " for p = " + std::to_string(p));
}

/// An explicit maximal order of the definite algebra ramified at {p, infinity}, verified by its
/// reduced discriminant.
inline QuaternionOrder maximal_order(i64 p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  QuaternionOrder order;
  if (p == 2) {
    order = hurwitz_order();
  } else if (p % 4 == 3) {
    order = {{-1, -p}, {quaternion(1, 0, 1, 0, 2), quaternion(0, 1, 0, 1, 2), quaternion(0, 0, 1, 0), quaternion(0, 0, 0, 1)}};
  } else if (p % 8 == 5) {
    order = {{-2, -p}, {quaternion(1, 0, 1, 1, 2), quaternion(0, 1, 2, 1, 4), quaternion(0, 0, 1, 0), quaternion(0, 0, 0, 1)}};
  } else {
    // i^2 = -p, j^2 = -q; c with c^2 p + 1 = 0 (mod q)
    const i64 q = auxiliary_prime(p);
    i64 c = 0;
    while ((c * c % q * (p % q) + 1) % q != 0) ++c;
    order = {{-p, -q},
             {quaternion(1, 0, 1, 0, 2), quaternion(0, 1, 0, 1, 2), Quaternion{Rational(0), Rational(0), Rational(1, q), Rational(c, q)},
              quaternion(0, 0, 0, 1)}};
  }
  QuaternionOrder verified;
  try {
    verified = verify_order(order);
  } catch (const Error& e) {
    throw Error(ErrorCode::MaximalityCheckFailed, "recipe for p = " + std::to_string(p) + " is not an order: " + e.what());
  }
  const i64 d = reduced_discriminant(verified);
  if (d != p) {
    throw Error(ErrorCode::MaximalityCheckFailed,
                "order for p = " + std::to_string(p) + " has reduced discriminant " + std::to_string(d));
  }
  return verified;
}

// ---------------------------------------------------------------------------
// Gross lattice: trace-zero elements of Z + 2O with the reduced norm.

struct GrossLattice {
  TernaryQF form;
  i64 prime = 2;
  std::array<Quaternion, 3> basis_in_order{};
};

/// Hessian Tr(s_i conj(s_j)) of the norm form on three elements.
inline Mat3 norm_form_hessian(const QuaternionAlgebra& alg, const std::array<Quaternion, 3>& basis) {
  Mat3 h{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Rational t = trace_pairing(alg, basis[i], basis[j]);
      if (t.denominator() != 1) throw Error(ErrorCode::InvariantMismatch, "norm form is not integral");
      h[i][j] = t.numerator();
    }
  }
  return h;
}

/// Trace-zero part of Z + 2O in canonical echelon basis, without invariant checks.
inline std::array<Quaternion, 3> gross_lattice_basis(const QuaternionOrder& order) {
  std::vector<Quaternion> gens{quaternion(1, 0, 0, 0)};
  for (const auto& b : order.basis) gens.push_back(scale(b, Rational(2)));
  const std::vector<Quaternion> z2o = canonical_basis(gens);
  if (z2o.size() != 4) throw Error(ErrorCode::RankDeficient, "Z + 2O must have rank 4");
  // kernel of c -> sum c_r Tr(z2o_r): complete t / gcd(t) to a unimodular matrix
  std::array<i64, 4> t{};
  for (int r = 0; r < 4; ++r) {
    Rational tr = reduced_norm_trace(order.algebra, z2o[r]).trace;
    if (tr.denominator() != 1) throw Error(ErrorCode::InvariantMismatch, "order element with non-integral trace");
    t[r] = tr.numerator();
  }
  // integer row ops on the basis that zero the trace of all but one row
  std::vector<Quaternion> rows(z2o.begin(), z2o.end());
  for (int src = 0; src < 3; ++src) {
    while (t[src] != 0) {
      i64 k = t[3] / t[src];
      t[3] -= k * t[src];
      rows[3] = rows[3] + scale(rows[src], Rational(-k));
      std::swap(t[3], t[src]);
      std::swap(rows[3], rows[src]);
    }
  }
  std::vector<Quaternion> kernel(rows.begin(), rows.begin() + 3);
  // canonical form on the pure part (the 1-coordinate is zero throughout)
  std::vector<Quaternion> canon = canonical_basis(kernel);
  if (canon.size() != 3) throw Error(ErrorCode::RankDeficient, "trace-zero lattice must have rank 3");
  std::array<Quaternion, 3> out;
  for (int r = 0; r < 3; ++r) {
    if (canon[r][0] != Rational(0)) throw Error(ErrorCode::InvariantMismatch, "kernel element with nonzero trace");
    out[r] = canon[r];
  }
  return out;
}

/// Gross lattice of a maximal order of reduced discriminant p; checks H = 32 p^2 and N = 4 p.
inline GrossLattice gross_lattice(const QuaternionOrder& order, i64 p) {
  GrossLattice g;
  g.prime = p;
  g.basis_in_order = gross_lattice_basis(order);
  g.form = ternary_form(norm_form_hessian(order.algebra, g.basis_in_order));
  const i64 h = hessian_det(g.form);
  const i64 n = level(g.form);
  if (h != 32 * p * p || n != 4 * p) {
    throw Error(ErrorCode::InvariantMismatch, "Gross lattice for p = " + std::to_string(p) + " has H = " + std::to_string(h) +
                                                  ", N = " + std::to_string(n));
  }
  return g;
}

inline GrossLattice gross_lattice(i64 p) { return gross_lattice(maximal_order(p), p); }

// ---------------------------------------------------------------------------
// Split model End(Z^2): fixed golden data, invariants only (the form is indefinite).

using Mat2 = std::array<std::array<i64, 2>, 2>;

struct SplitModelInvariants {
  std::array<Mat2, 3> basis{};
  Mat3 hessian{};
  i64 det = 0;
  i64 level = 0;
};

/// Gross-type lattice spanned by [[0,2],[0,0]], [[1,0],[0,-1]], [[0,0],[2,0]] in M2(Z).
/// The norm is taken as -det, so the form reads y^2 + 4xz.
inline SplitModelInvariants split_model_invariants() {
  SplitModelInvariants s;
  s.basis = {Mat2{{{0, 2}, {0, 0}}}, Mat2{{{1, 0}, {0, -1}}}, Mat2{{{0, 0}, {2, 0}}}};
  auto adj = [](const Mat2& m) { return Mat2{{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}}; };
  auto trace_of_product = [](const Mat2& x, const Mat2& y) {
    i64 t = 0;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) t += x[i][k] * y[k][i];
    return t;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.hessian[i][j] = -trace_of_product(s.basis[i], adj(s.basis[j]));
  s.det = static_cast<i64>(det3(s.hessian));
  s.level = level(s.hessian);
  return s;
}

}  // namespace singmod
