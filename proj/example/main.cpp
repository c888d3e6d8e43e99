// Walks from a Gross lattice to reduced singular moduli.
#include <iostream>

#include "singmod/cm_reduction.hpp"
#include "singmod/qseries.hpp"

using namespace singmod;

int main() {
  const i64 p = 13;
  const auto lattice = gross_lattice(p);
  std::cout << "Gross lattice S_" << p << ": det " << hessian_det(lattice.form) << ", level " << level(lattice.form) << "\n";
  std::cout << "theta " << theta_series(lattice.form, 24) << "\n";

  // the class-number identity at a one-class prime
  const auto g = genus_identity_check(lattice, decompose_discriminant(-23));
  std::cout << "r'(23, S_13) = " << g.lhs << ", eps 12/(p-1) h/u = " << g.rhs << "\n";

  // no disk cache: class polynomials are rebuilt in memory
  const ClassPolynomialCache cache;
  std::cout << "#SS(" << p << ") = " << ss_count(p) << "\n";
  for (i64 d : {-3, -4, -7, -23, -71, -359}) {
    const auto r = reduce_and_count(cache, decompose_discriminant(d), p);
    std::cout << "  disc " << d << ": h = " << r.class_number << ", " << r.distinct_roots << " distinct roots mod " << p
              << ", " << classification_name(r.classification) << "\n";
  }
  const auto ph = phenomenon_check(cache, decompose_discriminant(-3), p);
  std::cout << "red_p(S(-3)) = red_p(S(" << ph.lifted.value << ")): " << (ph.equal ? "yes" : "no") << "\n";
}
