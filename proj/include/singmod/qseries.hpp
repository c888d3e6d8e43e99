#pragma once

#include <ostream>
#include <vector>

#include "singmod/arith.hpp"
#include "singmod/ternary_forms.hpp"

namespace singmod {

/// Truncated q-expansion a_0 + a_1 q + ... + a_M q^M.
class IntSeries {
 public:
  IntSeries() : coeffs_{0} {}
  explicit IntSeries(std::vector<i64> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "a series needs at least a_0");
  }

  i64 truncation() const { return static_cast<i64>(coeffs_.size()) - 1; }
  i64 operator[](i64 m) const {
    if (m < 0 || m > truncation()) throw Error(ErrorCode::InvalidArgument, "coefficient index beyond truncation");
    return coeffs_[static_cast<std::size_t>(m)];
  }
  const std::vector<i64>& coefficients() const { return coeffs_; }

  friend bool operator==(const IntSeries&, const IntSeries&) = default;
  friend std::ostream& operator<<(std::ostream& os, const IntSeries& s) {
    os << "[";
    for (std::size_t i = 0; i < s.coeffs_.size(); ++i) os << (i ? "," : "") << s.coeffs_[i];
    return os << "]";
  }

 private:
  std::vector<i64> coeffs_;
};

/// theta(L; q) = sum over v in Z^3 of q^{Q(v)}, truncated at q^M.
inline IntSeries theta_series(const TernaryQF& form, i64 max_n) {
  if (max_n < 0) throw Error(ErrorCode::InvalidArgument, "truncation must be >= 0");
  return IntSeries(representation_numbers(form, max_n));
}

/// U_n: sum a_m q^m -> sum a_{nm} q^m, truncated at floor(M / n).
inline IntSeries u_operator(const IntSeries& f, i64 n) {
  require_positive(n, "u_operator");
  std::vector<i64> out;
  for (i64 m = 0; m * n <= f.truncation(); ++m) out.push_back(f[m * n]);
  return IntSeries(std::move(out));
}

}  // namespace singmod
