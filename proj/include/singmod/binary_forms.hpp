#pragma once

#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "singmod/arith.hpp"

namespace singmod {

/// Integral binary quadratic form a x^2 + b xy + c y^2.
struct BinaryQF {
  i64 a = 1;
  i64 b = 0;
  i64 c = 1;

  i64 discriminant() const { return b * b - 4 * a * c; }
  bool positive_definite() const { return a > 0 && discriminant() < 0; }
  bool primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

  bool is_reduced() const {
    i64 abs_b = b < 0 ? -b : b;
    if (!(abs_b <= a && a <= c)) return false;
    if ((abs_b == a || a == c) && b < 0) return false;
    return true;
  }

  i128 evaluate(i64 x, i64 y) const { return i128(a) * x * x + i128(b) * x * y + i128(c) * y * y; }

  friend bool operator==(const BinaryQF&, const BinaryQF&) = default;
  friend std::ostream& operator<<(std::ostream& os, const BinaryQF& f) {
    return os << "(" << f.a << "," << f.b << "," << f.c << ")";
  }
};

inline void require_positive_definite(const BinaryQF& f) {
  if (!f.positive_definite()) {
    throw Error(ErrorCode::NotPositiveDefinite, "binary form (" + std::to_string(f.a) + "," + std::to_string(f.b) + "," +
                                                    std::to_string(f.c) + ") is not positive definite");
  }
}

/// Reduced representative of the SL2(Z)-class of a positive definite form.
inline BinaryQF reduce(BinaryQF f) {
  require_positive_definite(f);
  while (true) {
    // normalize b into (-a, a]
    if (f.b > f.a || f.b <= -f.a) {
      i64 two_a = 2 * f.a;
      i64 k = static_cast<i64>(floor_div(i128(f.a) - f.b, two_a));
      // (x, y) -> (x + k y, y)
      f.c = f.a * k * k + f.b * k + f.c;
      f.b = f.b + two_a * k;
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

/// Reduced positive definite form; the constructor used throughout the library.
inline BinaryQF binary_form(i64 a, i64 b, i64 c) { return reduce(BinaryQF{a, b, c}); }

inline bool equivalent(const BinaryQF& f, const BinaryQF& g) { return reduce(f) == reduce(g); }

/// Primitive reduced forms of discriminant disc, ordered by (a, b); the list has h(disc) entries.
inline std::vector<BinaryQF> reduced_forms(const Discriminant& disc) {
  std::vector<BinaryQF> out;
  const i64 d = disc.value;
  const i64 bound = static_cast<i64>(isqrt(i128(-d) / 3));
  for (i64 a = 1; a <= bound; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      if (mod(b - d, 2) != 0) continue;
      i64 num = b * b - d;
      if (num % (4 * a) != 0) continue;
      i64 c = num / (4 * a);
      BinaryQF f{a, b, c};
      if (!f.is_reduced() || !f.primitive()) continue;
      out.push_back(f);
    }
  }
  return out;
}

inline std::vector<BinaryQF> reduced_forms(i64 disc) { return reduced_forms(decompose_discriminant(disc)); }

inline i64 class_number(const Discriminant& disc) { return static_cast<i64>(reduced_forms(disc).size()); }
inline i64 class_number(i64 disc) { return class_number(decompose_discriminant(disc)); }

inline int automorph_count_u(i64 disc) { return automorph_count_u(decompose_discriminant(disc)); }

/// Number of (x, y) in Z^2 with f(x, y) = n.
inline i64 count_representations_binary(const BinaryQF& f, i64 n) {
  require_positive_definite(f);
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "representation count needs n >= 0");
  if (n == 0) return 1;
  const i128 delta = f.discriminant();
  const i64 y_max = static_cast<i64>(isqrt(floor_div(i128(4) * f.a * n, -delta)));
  i64 count = 0;
  for (i64 y = -y_max; y <= y_max; ++y) {
    // a x^2 + (b y) x + (c y^2 - n) = 0
    i128 disc_x = delta * y * y + i128(4) * f.a * n;
    i128 s;
    if (!is_square(disc_x, &s)) continue;
    i128 by = i128(f.b) * y;
    for (i128 num : {-by + s, -by - s}) {
      if (num % (2 * f.a) == 0) ++count;
      if (s == 0) break;
    }
  }
  return count;
}

struct DirichletReport {
  i64 count = 0;
  int u = 2;
  i64 sigma0 = 1;
  i64 bound = 0;
  bool holds = false;
};

/// Compares r(f, n) against u(disc f) * sigma0(n).
inline DirichletReport dirichlet_bound_holds(const BinaryQF& f, i64 n) {
  require_positive(n, "dirichlet_bound_holds");
  DirichletReport r;
  r.count = count_representations_binary(f, n);
  r.u = automorph_count_u(decompose_discriminant(f.discriminant()));
  r.sigma0 = sigma0(n);
  r.bound = r.u * r.sigma0;
  r.holds = r.count <= r.bound;
  return r;
}

}  // namespace singmod
