#pragma once

#include <boost/rational.hpp>

#include <array>
#include <ostream>
#include <string>

#include "singmod/arith.hpp"

namespace singmod {

using Rational = boost::rational<i64>;

/// P = (two_a/2) x^2 + b xy + (two_c/2) y^2 + (two_d/2) x + (two_e/2) y + f.
struct IntegerValuedQP {
  i64 two_a = 2;
  i64 b = 0;
  i64 two_c = 2;
  i64 two_d = 0;
  i64 two_e = 0;
  i64 f = 0;

  /// b^2 - 4ac of the quadratic part.
  i64 discriminant() const { return b * b - two_a * two_c; }

  /// 2 P(x, y), always an integer.
  i128 twice_value(i64 x, i64 y) const {
    return i128(two_a) * x * x + i128(2 * b) * x * y + i128(two_c) * y * y + i128(two_d) * x + i128(two_e) * y + 2 * i128(f);
  }

  Rational a() const { return {two_a, 2}; }
  Rational c() const { return {two_c, 2}; }
  Rational d() const { return {two_d, 2}; }
  Rational e() const { return {two_e, 2}; }

  friend bool operator==(const IntegerValuedQP&, const IntegerValuedQP&) = default;
  friend std::ostream& operator<<(std::ostream& os, const IntegerValuedQP& p) {
    return os << p.two_a << "," << p.b << "," << p.two_c << "," << p.two_d << "," << p.two_e << "," << p.f;
  }
};

/// The real minimum of P: P(x, y) = Q((x, y) + (lambda, mu)) + m.
struct MinimumPoint {
  Rational lambda;
  Rational mu;
  Rational m;
};

inline MinimumPoint minimum_point(const IntegerValuedQP& p) {
  const Rational a = p.a(), b = p.b, c = p.c(), d = p.d(), e = p.e();
  const Rational two(2), four(4);
  const Rational det = a * c - b * b / four;
  if (det == Rational(0)) throw Error(ErrorCode::DegenerateQuadraticPart, "quadratic part is degenerate");
  MinimumPoint mp;
  mp.lambda = (c * d - b * e / two) / (two * det);
  mp.mu = (-b * d / two + a * e) / (two * det);
  const Rational q = a * mp.lambda * mp.lambda + b * mp.lambda * mp.mu + c * mp.mu * mp.mu;
  mp.m = Rational(p.f) - q;
  return mp;
}

namespace detail {

inline IntegerValuedQP check_coefficients(const std::array<Rational, 6>& coeffs) {
  std::array<i64, 6> twice{};
  for (std::size_t k = 0; k < 6; ++k) {
    Rational t = coeffs[k] * Rational(2);
    if (t.denominator() != 1) {
      throw Error(ErrorCode::HalfIntegerViolation, "coefficient " + std::to_string(k) + " is not in Z/2");
    }
    twice[k] = t.numerator();
  }
  if (twice[1] % 2 != 0) throw Error(ErrorCode::HalfIntegerViolation, "xy coefficient must be an integer");
  if (twice[5] % 2 != 0) throw Error(ErrorCode::HalfIntegerViolation, "constant term must be an integer");
  IntegerValuedQP p{twice[0], twice[1] / 2, twice[2], twice[3], twice[4], twice[5] / 2};
  // a degree-2 polynomial is integer valued on Z^2 iff its binomial-basis coordinates are integers,
  // iff it is an integer at these six points
  static constexpr std::array<std::array<i64, 2>, 6> basis{{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 1}}};
  for (auto [x, y] : basis) {
    if (p.twice_value(x, y) % 2 != 0) {
      throw Error(ErrorCode::NotIntegerValued,
                  "P(" + std::to_string(x) + "," + std::to_string(y) + ") is not an integer");
    }
  }
  if (p.two_a <= 0 || p.discriminant() >= 0) {
    throw Error(ErrorCode::NotPositiveDefinite, "quadratic part is not positive definite");
  }
  return p;
}

}  // namespace detail

/// Strict constructor: integer valued, positive definite quadratic part, minimum m >= 0.
inline IntegerValuedQP validate_integer_valued(const std::array<Rational, 6>& coeffs) {
  IntegerValuedQP p = detail::check_coefficients(coeffs);
  if (minimum_point(p).m < Rational(0)) throw Error(ErrorCode::NegativeMinimum, "P takes negative real values");
  return p;
}

/// Relaxed constructor for counting: the minimum may be negative.
inline IntegerValuedQP validate_integer_valued_relaxed(const std::array<Rational, 6>& coeffs) {
  return detail::check_coefficients(coeffs);
}

inline std::array<Rational, 6> qp_coefficients(i64 two_a, i64 b, i64 two_c, i64 two_d, i64 two_e, i64 f) {
  return {Rational(two_a, 2), Rational(b), Rational(two_c, 2), Rational(two_d, 2), Rational(two_e, 2), Rational(f)};
}

/// Number of (x, y) in Z^2 with P(x, y) = n.
inline i64 count_representations_poly(const IntegerValuedQP& p, i64 n) {
  if (p.two_a <= 0 || p.discriminant() >= 0) {
    throw Error(ErrorCode::NotPositiveDefinite, "quadratic part is not positive definite");
  }
  // 2P = 2n as a quadratic in x: A x^2 + B(y) x + C(y) = 0
  const i128 A = p.two_a;
  const i128 delta = p.discriminant();
  // B(y)^2 - 4 A C(y) = 4 delta y^2 + (4 b two_d - 4 A two_e) y + two_d^2 - 8 A (f - n) >= 0
  const i128 qy = -4 * delta;
  const i128 ly = -(4 * i128(p.b) * p.two_d - 4 * A * p.two_e);
  const i128 cy = -(i128(p.two_d) * p.two_d - 8 * A * (i128(p.f) - n));
  const IntRange ys = quadratic_le_zero(qy, ly, cy);
  i64 count = 0;
  for (i128 y = ys.lo; y <= ys.hi; ++y) {
    const i128 B = 2 * i128(p.b) * y + p.two_d;
    const i128 C = i128(p.two_c) * y * y + i128(p.two_e) * y + 2 * (i128(p.f) - n);
    const i128 disc = B * B - 4 * A * C;
    i128 s;
    if (!is_square(disc, &s)) continue;
    for (i128 num : {-B + s, -B - s}) {
      if (num % (2 * A) == 0) ++count;
      if (s == 0) break;
    }
  }
  return count;
}

/// Number of proper automorphs of the quadratic part Q: 6, 4 or 2, read off the primitive
/// integral form proportional to 2Q. Agrees with u(delta) whenever Q is integral and primitive.
inline int quadratic_part_automorphs(const IntegerValuedQP& p) {
  const i64 g = std::gcd(std::gcd(p.two_a, 2 * p.b), p.two_c);
  const i64 d = 4 * p.discriminant() / (g * g);
  if (d == -3) return 6;
  if (d == -4) return 4;
  return 2;
}

struct QPBoundReport {
  i64 count = 0;
  i64 delta = 0;
  int u = 2;
  i64 sigma0_tilde = 1;
  i64 bound = 0;
  bool holds = false;
};

/// r(P, n) <= u * sigma0_tilde(delta^2 n) with u the automorph count of Q; needs a strictly validated P.
inline QPBoundReport qp_bound_holds(const IntegerValuedQP& p, i64 n) {
  require_positive(n, "qp_bound_holds");
  if (minimum_point(p).m < Rational(0)) throw Error(ErrorCode::NegativeMinimum, "P takes negative real values");
  QPBoundReport r;
  r.count = count_representations_poly(p, n);
  r.delta = p.discriminant();
  r.u = quadratic_part_automorphs(p);
  r.sigma0_tilde = sigma0_tilde(static_cast<u128>(i128(r.delta) * r.delta * n));
  r.bound = r.u * r.sigma0_tilde;
  r.holds = r.count <= r.bound;
  return r;
}

}  // namespace singmod
