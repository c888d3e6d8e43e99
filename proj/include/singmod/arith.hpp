#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "singmod/error.hpp"

namespace singmod {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Small exact helpers shared by every enumeration routine.

inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

/// floor(sqrt(n)) for n >= 0, exact on the full 128-bit range.
inline u128 isqrt(u128 n) {
  if (n < 2) return n;
  u128 x = n;
  int shift = 0;
  while (x >> (2 * shift + 2)) ++shift;
  u128 r = u128(1) << (shift + 1);  // r >= sqrt(n)
  while (true) {
    u128 y = (r + n / r) / 2;
    if (y >= r) break;
    r = y;
  }
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline i128 isqrt(i128 n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "isqrt of a negative number");
  return static_cast<i128>(isqrt(static_cast<u128>(n)));
}

inline bool is_square(i128 n, i128* root = nullptr) {
  if (n < 0) return false;
  i128 r = isqrt(n);
  if (root) *root = r;
  return r * r == n;
}

/// Largest k >= 0 with k^e <= n (n >= 0).
inline i64 integer_root_floor(u128 n, int e) {
  if (n == 0) return 0;
  auto pow_le = [&](u128 k) {
    u128 acc = 1;
    for (int i = 0; i < e; ++i) {
      if (acc > n / k) return false;
      acc *= k;
    }
    return acc <= n;
  };
  u128 lo = 1, hi = 2;
  while (pow_le(hi)) hi *= 2;
  while (hi - lo > 1) {
    u128 mid = lo + (hi - lo) / 2;
    (pow_le(mid) ? lo : hi) = mid;
  }
  return static_cast<i64>(lo);
}

/// Integer range {x : a x^2 + b x + c <= 0} for a > 0; empty when lo > hi.
struct IntRange {
  i128 lo = 1;
  i128 hi = 0;
  bool empty() const { return lo > hi; }
};

inline IntRange quadratic_le_zero(i128 a, i128 b, i128 c) {
  i128 disc = b * b - 4 * a * c;
  if (disc < 0) return {};
  i128 s = isqrt(disc);
  // sqrt(disc) lies in [s, s+1); no integer can separate the exact and rounded endpoints.
  return {ceil_div(-b - s, 2 * a), floor_div(-b + s, 2 * a)};
}

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Primality and factorization (deterministic Miller-Rabin, trial division, rho).

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = static_cast<u64>(n) - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, static_cast<u64>(n));
    if (x == 1 || x == static_cast<u64>(n) - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, static_cast<u64>(n));
      if (x == static_cast<u64>(n) - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(u64 n, std::map<i64, int>& out) {
  if (n == 1) return;
  if (is_prime(static_cast<i64>(n))) {
    ++out[static_cast<i64>(n)];
    return;
  }
  u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of n >= 1 as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "factorize expects n >= 1, got " + std::to_string(n));
  std::map<i64, int> acc;
  u64 m = static_cast<u64>(n);
  for (u64 p = 2; p < 1000 && p * p <= m; ++p) {
    while (m % p == 0) {
      ++acc[static_cast<i64>(p)];
      m /= p;
    }
  }
  if (m > 1) detail::factor_into(m, acc);
  return {acc.begin(), acc.end()};
}

inline std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

inline std::vector<i64> primes_up_to(i64 bound) {
  std::vector<i64> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound + 1), false);
  for (i64 i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (i64 j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Divisor functions and the Moebius function.

inline void require_positive(i64 n, const char* what) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " expects n >= 1, got " + std::to_string(n));
}

/// Number of positive divisors of n.
inline i64 sigma0(i64 n) {
  require_positive(n, "sigma0");
  i64 count = 1;
  for (auto [p, e] : factorize(n)) count *= (e + 1);
  return count;
}

namespace detail {

// Maximum of sigma0 over numbers 2^e1 3^e2 5^e3 ... <= bound with e1 >= e2 >= ...
// Some such number maximizes sigma0 on [1, bound].
inline void hcn_search(u128 bound, u128 value, std::size_t prime_index, int max_exp, i64 divisors, i64& best) {
  static constexpr std::array<u64, 18> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};
  best = std::max(best, divisors);
  if (prime_index >= kPrimes.size()) return;
  u128 v = value;
  for (int e = 1; e <= max_exp; ++e) {
    if (v > bound / kPrimes[prime_index]) break;
    v *= kPrimes[prime_index];
    hcn_search(bound, v, prime_index + 1, e, divisors * (e + 1), best);
  }
}

// Candidates 2^e1 3^e2 ... <= bound with nonincreasing exponents, with their divisor counts.
inline void hcn_collect(u128 bound, u128 value, std::size_t prime_index, int max_exp, i64 divisors,
                        std::vector<std::pair<u128, i64>>& out) {
  static constexpr std::array<u64, 18> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};
  out.emplace_back(value, divisors);
  if (prime_index >= kPrimes.size()) return;
  u128 v = value;
  for (int e = 1; e <= max_exp; ++e) {
    if (v > bound / kPrimes[prime_index]) break;
    v *= kPrimes[prime_index];
    hcn_collect(bound, v, prime_index + 1, e, divisors * (e + 1), out);
  }
}

inline constexpr u128 kHcnTableBound = u128(1) << 64;

// Highly composite numbers up to 2^64 (each has more divisors than every smaller number).
inline const std::vector<std::pair<u128, i64>>& highly_composite_numbers() {
  static const std::vector<std::pair<u128, i64>> table = [] {
    std::vector<std::pair<u128, i64>> all;
    hcn_collect(kHcnTableBound, 1, 0, 127, 1, all);
    std::sort(all.begin(), all.end());
    std::vector<std::pair<u128, i64>> records;
    for (const auto& entry : all) {
      if (records.empty() || entry.second > records.back().second) records.push_back(entry);
    }
    return records;
  }();
  return table;
}

}  // namespace detail

/// max over 1 <= m <= n of sigma0(m); nondecreasing in n.
inline i64 sigma0_tilde(u128 n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sigma0_tilde expects n >= 1");
  if (n <= detail::kHcnTableBound) {
    const auto& hcn = detail::highly_composite_numbers();
    auto it = std::upper_bound(hcn.begin(), hcn.end(), n, [](u128 v, const auto& e) { return v < e.first; });
    return std::prev(it)->second;
  }
  i64 best = 1;
  detail::hcn_search(n, 1, 0, 127, 1, best);
  return best;
}

inline i64 sigma0_tilde(i64 n) {
  require_positive(n, "sigma0_tilde");
  return sigma0_tilde(static_cast<u128>(n));
}

/// Prefix-maximum table of sigma0 for sweeps that query many nearby small arguments.
/// Falls back to the highly-composite search above the table bound.
class Sigma0TildeTable {
 public:
  explicit Sigma0TildeTable(i64 bound) : prefix_max_(static_cast<std::size_t>(std::max<i64>(bound, 1) + 1), 0) {
    std::vector<i64> divisors(prefix_max_.size(), 0);
    for (std::size_t d = 1; d < divisors.size(); ++d) {
      for (std::size_t m = d; m < divisors.size(); m += d) ++divisors[m];
    }
    for (std::size_t m = 1; m < divisors.size(); ++m) prefix_max_[m] = std::max(prefix_max_[m - 1], divisors[m]);
  }

  i64 operator()(u128 n) const {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "sigma0_tilde expects n >= 1");
    if (n < prefix_max_.size()) return prefix_max_[static_cast<std::size_t>(n)];
    return sigma0_tilde(n);
  }

 private:
  std::vector<i64> prefix_max_;
};

inline int moebius(i64 n) {
  require_positive(n, "moebius");
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

/// Kronecker symbol (a|n), with (a|2) = 0, 1, -1 for a even, a = +-1 mod 8, a = +-3 mod 8.
inline int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    if (v % 2 == 1) {
      i64 r = mod(a, 8);
      if (r == 3 || r == 5) result = -result;
    }
  }
  // Jacobi symbol (a|n) for odd n > 0.
  i64 m = n;
  i64 x = mod(a, m);
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      i64 r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

// ---------------------------------------------------------------------------
// Negative discriminants.

inline bool is_negative_discriminant(i64 value) {
  if (value >= 0) return false;
  i64 r = mod(value, 4);
  return r == 0 || r == 1;
}

/// A negative discriminant with value = fundamental * conductor^2.
struct Discriminant {
  i64 value = -3;
  i64 conductor = 1;
  i64 fundamental = -3;

  i64 abs() const { return -value; }
  bool is_fundamental() const { return conductor == 1; }
  friend bool operator==(const Discriminant&, const Discriminant&) = default;
};

inline Discriminant decompose_discriminant(i64 value) {
  if (!is_negative_discriminant(value)) {
    throw Error(ErrorCode::NotDiscriminant, std::to_string(value) + " is not a negative discriminant");
  }
  i64 conductor = 1;
  int two_exponent = 0;
  for (auto [p, e] : factorize(-value)) {
    if (p == 2) {
      two_exponent = e;
      continue;
    }
    for (int k = 0; k < e / 2; ++k) conductor *= p;
  }
  i64 base = value / (conductor * conductor);
  for (int k = two_exponent / 2; k >= 0; --k) {
    i64 square = i64{1} << (2 * k);
    i64 candidate = base / square;
    if (is_negative_discriminant(candidate)) {
      conductor <<= k;
      break;
    }
  }
  return {value, conductor, value / (conductor * conductor)};
}

inline Discriminant make_discriminant(i64 value) { return decompose_discriminant(value); }

/// Prime-to-p part of the conductor applied to the fundamental discriminant.
inline Discriminant p_fundamental_part(const Discriminant& disc, i64 p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  i64 f = disc.conductor;
  while (f % p == 0) f /= p;
  return {disc.fundamental * f * f, f, disc.fundamental};
}

inline bool is_p_fundamental(const Discriminant& disc, i64 p) { return disc.conductor % p != 0; }

/// Number of automorphs of a primitive form of discriminant d: 6, 4 or 2.
inline int automorph_count_u(const Discriminant& disc) {
  if (disc.value == -3) return 6;
  if (disc.value == -4) return 4;
  return 2;
}

/// |O^x / Z^x| in {1, 2, 3}: half the automorph count.
inline int unit_index(const Discriminant& disc) { return automorph_count_u(disc) / 2; }

inline std::vector<Discriminant> discriminants_in_range(i64 min_abs, i64 max_abs) {
  std::vector<Discriminant> out;
  for (i64 d = std::max<i64>(min_abs, 3); d <= max_abs; ++d) {
    if (is_negative_discriminant(-d)) out.push_back(decompose_discriminant(-d));
  }
  return out;
}

}  // namespace singmod
