#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "singmod/arith.hpp"
#include "singmod/binary_forms.hpp"
#include "singmod/class_polynomial.hpp"
#include "singmod/finite_field.hpp"
#include "singmod/quaternion.hpp"
#include "singmod/ternary_forms.hpp"

namespace singmod {

inline fp::Poly reduce_mod_p(const ClassPolynomial& poly, u64 p) {
  std::vector<u64> coeffs;
  coeffs.reserve(poly.coefficients.size());
  for (const auto& c : poly.coefficients) coeffs.push_back(c.mod(p));
  return {p, std::move(coeffs)};
}

/// #SS(p) by Eichler's formula: floor(p/12) + 0, 1, 1, 2 for p = 1, 5, 7, 11 (mod 12); 1 for p = 2, 3.
inline i64 ss_count(i64 p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2 || p == 3) return 1;
  static constexpr int kExtra[12] = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2};
  return p / 12 + kExtra[p % 12];
}

/// Process-wide memo of supersingular polynomials; filled once per prime.
inline const fp::Poly& supersingular_polynomial_cached(u64 p) {
  static std::mutex mutex;
  static std::map<u64, fp::Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(p); it != cache.end()) return it->second;
  }
  fp::Poly poly = fp::supersingular_polynomial(p);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(p, std::move(poly)).first->second;
}

enum class Classification { Ordinary, Supersingular, MixedInvalid };

inline const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Ordinary: return "ordinary";
    case Classification::Supersingular: return "supersingular";
    case Classification::MixedInvalid: return "mixed-invalid";
  }
  return "?";
}

struct ReductionReport {
  i64 p = 2;
  Discriminant delta;
  i64 class_number = 0;
  /// #red_p(S(delta)): distinct roots of H mod p in the algebraic closure.
  i64 distinct_roots = 0;
  i64 supersingular_roots = 0;
  Classification classification = Classification::Ordinary;
  i64 multiplicity_max = 0;
  /// Root multiplicities as (multiplicity, number of distinct roots with it).
  std::vector<std::pair<i64, i64>> multiplicity_profile;
  /// Distinct roots lying in F_{p^2}.
  i64 roots_in_fp2 = 0;
  /// Distinct roots that are supersingular according to the Hasse-polynomial oracle.
  i64 roots_on_supersingular_locus = 0;
};

/// Deuring: p split in the CM field gives ordinary reduction, otherwise supersingular.
inline Classification deuring_classification(const Discriminant& delta, i64 p) {
  return kronecker(delta.fundamental, p) == 1 ? Classification::Ordinary : Classification::Supersingular;
}

inline ReductionReport reduce_and_count(const ClassPolynomial& poly, i64 p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  ReductionReport r;
  r.p = p;
  r.delta = poly.discriminant;
  r.class_number = poly.degree();
  const fp::Poly h = reduce_mod_p(poly, static_cast<u64>(p));
  std::map<i64, i64> profile;
  fp::Poly radical = fp::Poly::constant(static_cast<u64>(p), 1);
  for (const auto& [g, m] : fp::squarefree_factorization(h)) {
    profile[m] += g.degree();
    radical = radical * g;
    r.multiplicity_max = std::max<i64>(r.multiplicity_max, m);
  }
  r.multiplicity_profile.assign(profile.begin(), profile.end());
  r.distinct_roots = std::max<long>(radical.degree(), 0);
  r.roots_in_fp2 = fp::roots_in_fp2(radical);
  r.roots_on_supersingular_locus = fp::gcd(radical, supersingular_polynomial_cached(static_cast<u64>(p))).degree();
  r.classification = deuring_classification(r.delta, p);
  if (r.classification == Classification::Supersingular) {
    r.supersingular_roots = r.distinct_roots;
    if (r.roots_in_fp2 != r.distinct_roots || r.roots_on_supersingular_locus != r.distinct_roots) {
      r.classification = Classification::MixedInvalid;
    }
  } else if (r.roots_on_supersingular_locus != 0) {
    r.classification = Classification::MixedInvalid;
  }
  return r;
}

inline ReductionReport reduce_and_count(const ClassPolynomialCache& cache, const Discriminant& delta, i64 p) {
  return reduce_and_count(cache.get(delta), p);
}

// ---------------------------------------------------------------------------

struct PhenomenonReport {
  Discriminant delta;
  Discriminant lifted;  // delta p^2
  i64 p = 2;
  i64 distinct_roots = 0;
  i64 lifted_distinct_roots = 0;
  bool equal = false;
};

/// red_p(S(delta)) = red_p(S(delta p^2)), compared as monic squarefree parts mod p (equal root sets).
inline PhenomenonReport phenomenon_check(const ClassPolynomialCache& cache, const Discriminant& delta, i64 p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  PhenomenonReport r;
  r.delta = delta;
  r.p = p;
  r.lifted = decompose_discriminant(delta.value * p * p);
  const fp::Poly a = fp::squarefree_part(reduce_mod_p(cache.get(delta), static_cast<u64>(p)));
  const fp::Poly b = fp::squarefree_part(reduce_mod_p(cache.get(r.lifted), static_cast<u64>(p)));
  r.distinct_roots = a.degree();
  r.lifted_distinct_roots = b.degree();
  r.equal = (a == b);
  return r;
}

// ---------------------------------------------------------------------------
// Genus identity at the primes whose Gross lattice genus has one class.

inline bool is_one_class_prime(i64 p) { return p == 2 || p == 3 || p == 5 || p == 7 || p == 13; }

struct GenusIdentityReport {
  i64 p = 2;
  Discriminant delta;
  i64 lhs = 0;  // r'(|delta|, S_p)
  int epsilon = 0;
  i64 class_number = 0;
  int unit_index = 1;
  Rational rhs;  // epsilon 12 / (p - 1) h / unit_index
  bool equal = false;
  /// gcd(delta, 2p) = 1: the cases where equality is asserted.
  bool asserted = false;
};

/// epsilon = 0 if (delta|p) = 1, 1 if p exactly divides delta, 2 otherwise.
inline int genus_epsilon(const Discriminant& delta, i64 p) {
  if (kronecker(delta.value, p) == 1) return 0;
  if (delta.value % p == 0 && (delta.value / p) % p != 0) return 1;
  return 2;
}

inline GenusIdentityReport genus_identity_check(const GrossLattice& lattice, const Discriminant& delta) {
  const i64 p = lattice.prime;
  if (!is_one_class_prime(p)) {
    throw Error(ErrorCode::UnsupportedPrime, "genus identity is only checked for p in {2, 3, 5, 7, 13}, got " + std::to_string(p));
  }
  GenusIdentityReport r;
  r.p = p;
  r.delta = delta;
  r.lhs = count_primitive(lattice.form, delta.abs(), PrimitiveMethod::GcdFilter);
  r.epsilon = genus_epsilon(delta, p);
  r.class_number = class_number(delta);
  r.unit_index = unit_index(delta);
  r.rhs = Rational(r.epsilon * 12 * r.class_number) / Rational((p - 1) * r.unit_index);
  r.equal = (Rational(r.lhs) == r.rhs);
  r.asserted = std::gcd(delta.value, 2 * p) == 1 && is_p_fundamental(delta, p);
  return r;
}

inline GenusIdentityReport genus_identity_check(i64 p, const Discriminant& delta) {
  if (!is_one_class_prime(p)) {
    throw Error(ErrorCode::UnsupportedPrime, "genus identity is only checked for p in {2, 3, 5, 7, 13}, got " + std::to_string(p));
  }
  return genus_identity_check(gross_lattice(p), delta);
}

// ---------------------------------------------------------------------------

struct MultiplicityReport {
  ReductionReport reduction;
  i64 multiplicity_sum = 0;
  bool sum_matches_class_number = false;
  /// r'(|delta_pf|, S_p) for one-class p in the supersingular case.
  std::optional<i64> lattice_bound;
  std::optional<bool> within_lattice_bound;
};

/// Root multiplicities of H mod p against h(delta), and (one-class p, supersingular) the max
/// multiplicity against the primitive representation count of the p-fundamental part.
inline MultiplicityReport multiplicity_report(const ClassPolynomialCache& cache, const Discriminant& delta, i64 p) {
  MultiplicityReport m;
  m.reduction = reduce_and_count(cache, delta, p);
  for (const auto& [mult, count] : m.reduction.multiplicity_profile) m.multiplicity_sum += mult * count;
  m.sum_matches_class_number = (m.multiplicity_sum == m.reduction.class_number);
  if (is_one_class_prime(p) && m.reduction.classification != Classification::Ordinary) {
    const Discriminant pf = p_fundamental_part(delta, p);
    m.lattice_bound = count_primitive(gross_lattice(p).form, pf.abs(), PrimitiveMethod::GcdFilter);
    m.within_lattice_bound = m.reduction.multiplicity_max <= *m.lattice_bound;
  }
  return m;
}

// ---------------------------------------------------------------------------

struct SweepRow {
  Discriminant delta;
  i64 p = 2;
  bool p_fundamental = true;
  Classification classification = Classification::Ordinary;
  i64 class_number = 0;
  i64 distinct_roots = 0;
  i64 ss_count = 0;
  i64 multiplicity_max = 0;
};

struct SweepFilters {
  bool fundamental_only = false;
  bool p_fundamental_only = false;
  bool supersingular_only = false;
};

inline bool sweep_accepts(const Discriminant& delta, i64 p, const SweepFilters& filters) {
  if (filters.fundamental_only && !delta.is_fundamental()) return false;
  if (filters.p_fundamental_only && !is_p_fundamental(delta, p)) return false;
  if (filters.supersingular_only && deuring_classification(delta, p) != Classification::Supersingular) return false;
  return true;
}

inline SweepRow sweep_row(const ClassPolynomialCache& cache, const Discriminant& delta, i64 p) {
  const ReductionReport r = reduce_and_count(cache, delta, p);
  return {delta, p, is_p_fundamental(delta, p), r.classification, r.class_number, r.distinct_roots, ss_count(p), r.multiplicity_max};
}

}  // namespace singmod
