#pragma once

#include <random>
#include <vector>

#include "singmod/quad_poly.hpp"
#include "singmod/ternary_forms.hpp"

namespace singmod {

// Seeded random corpora for the property checks. Same seed, same corpus.

/// Positive definite ternary forms with Hessian entries in [-max_entry, max_entry], even diagonal.
inline std::vector<TernaryQF> random_ternary_forms(u64 seed, std::size_t count, i64 max_entry = 12) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<i64> diag(1, max_entry / 2);
  std::uniform_int_distribution<i64> off(-max_entry, max_entry);
  std::vector<TernaryQF> out;
  while (out.size() < count) {
    const i64 a11 = 2 * diag(rng), a22 = 2 * diag(rng), a33 = 2 * diag(rng);
    const i64 a12 = off(rng), a13 = off(rng), a23 = off(rng);
    Mat3 h{{{a11, a12, a13}, {a12, a22, a23}, {a13, a23, a33}}};
    if (is_positive_definite(h)) out.push_back(TernaryQF{h});
  }
  return out;
}

/// Strictly validated integer-valued polynomials (m >= 0) with |2a|, |b|, ... , |f| <= max_coeff.
inline std::vector<IntegerValuedQP> random_valid_polynomials(u64 seed, std::size_t count, i64 max_coeff = 20) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<i64> pos(1, max_coeff);
  std::uniform_int_distribution<i64> any(-max_coeff, max_coeff);
  std::vector<IntegerValuedQP> out;
  while (out.size() < count) {
    const i64 two_a = pos(rng), b = any(rng), two_c = pos(rng), two_d = any(rng), two_e = any(rng), f = any(rng);
    try {
      out.push_back(validate_integer_valued(qp_coefficients(two_a, b, two_c, two_d, two_e, f)));
    } catch (const Error&) {
    }
  }
  return out;
}

/// A unimodular matrix from a product of elementary moves with multipliers in [-bound, bound].
inline Mat3 random_unimodular(std::mt19937_64& rng, i64 bound = 2, int moves = 4) {
  Mat3 u{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  std::uniform_int_distribution<int> idx(0, 2);
  std::uniform_int_distribution<i64> mult(-bound, bound);
  for (int s = 0; s < moves; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) {
      std::swap(u[0], u[(i + 1) % 3]);
      continue;
    }
    const i64 k = mult(rng);
    for (int c = 0; c < 3; ++c) u[i][c] += k * u[j][c];
  }
  return u;
}

}  // namespace singmod
