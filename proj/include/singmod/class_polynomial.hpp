#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "singmod/arith.hpp"
#include "singmod/bigfloat.hpp"
#include "singmod/binary_forms.hpp"
#include "singmod/parallel.hpp"

namespace singmod {

/// Arbitrary-size integer with value semantics over GMP's mpz_t.
class BigInt {
 public:
  BigInt() { mpz_init(value_); }
  explicit BigInt(long v) { mpz_init_set_si(value_, v); }
  explicit BigInt(const std::string& decimal) {
    if (mpz_init_set_str(value_, decimal.c_str(), 10) != 0) {
      mpz_clear(value_);
      throw Error(ErrorCode::InvalidArgument, "not a base-10 integer: '" + decimal + "'");
    }
  }
  BigInt(const BigInt& other) { mpz_init_set(value_, other.value_); }
  BigInt(BigInt&& other) noexcept {
    mpz_init(value_);
    mpz_swap(value_, other.value_);
  }
  BigInt& operator=(const BigInt& other) {
    mpz_set(value_, other.value_);
    return *this;
  }
  BigInt& operator=(BigInt&& other) noexcept {
    mpz_swap(value_, other.value_);
    return *this;
  }
  ~BigInt() { mpz_clear(value_); }

  mpz_ptr get() { return value_; }
  mpz_srcptr get() const { return value_; }

  std::string str() const {
    std::string out(mpz_sizeinbase(value_, 10) + 2, '\0');
    mpz_get_str(out.data(), 10, value_);
    out.resize(std::char_traits<char>::length(out.c_str()));
    return out;
  }

  /// Least nonnegative residue modulo m > 0.
  u64 mod(u64 m) const { return mpz_fdiv_ui(value_, m); }

  bool fits_i64() const { return mpz_fits_slong_p(value_) != 0; }
  i64 to_i64() const { return mpz_get_si(value_); }

  friend bool operator==(const BigInt& x, const BigInt& y) { return mpz_cmp(x.value_, y.value_) == 0; }

 private:
  mpz_t value_;
};

/// Monic integer Hilbert class polynomial; coefficients run from the constant term to the leading 1.
struct ClassPolynomial {
  Discriminant discriminant;
  std::vector<BigInt> coefficients;

  i64 degree() const { return static_cast<i64>(coefficients.size()) - 1; }
};

struct ClassPolynomialOptions {
  /// Overrides the working precision in bits when positive.
  long precision_bits = 0;
  /// |disc| above this is rejected.
  i64 max_abs_discriminant = 100000;
  int retries = 2;
  /// Extra bits per reduced form on top of the height estimate.
  long margin_per_form = 10;
  /// For 3 not dividing disc, build the polynomial of gamma_2 = j^{1/3} first (a third of the
  /// height) and recover H from it; falls back to j if that fails.
  bool use_gamma2 = true;
};

/// Working precision from the coefficient-height estimate pi sqrt|d| sum 1/a plus margins.
/// height_divisor 3 gives the estimate for the gamma_2 polynomial.
inline long class_polynomial_precision(const Discriminant& disc, const std::vector<BinaryQF>& forms,
                                       long margin_per_form = 10, int height_divisor = 1) {
  double inv_sum = 0;
  for (const auto& f : forms) inv_sum += 1.0 / static_cast<double>(f.a);
  double height = M_PI * std::sqrt(static_cast<double>(disc.abs())) * inv_sum / std::log(2.0) / height_divisor;
  return static_cast<long>(std::ceil(height)) + margin_per_form * static_cast<long>(forms.size()) + 64;
}

namespace detail {

// Euler function E(x) = prod (1 - x^n) = sum_k (-1)^k x^{k(3k-1)/2} (1 + x^k), evaluated at x = q
// and x = q^2 together: every term of E(q^2) is the square of the matching term of E(q).
// Summation stops once terms drop below 2^-(precision+16); log2_inv_abs_q = -log2 |q| > 0.
// Later terms are tiny, so the running powers are carried only at the precision their
// contribution still needs.
inline void euler_products(BigComplex& at_q, BigComplex& at_q2, const BigComplex& q, double log2_inv_abs_q,
                           ComplexScratch& scratch) {
  const mpfr_prec_t prec = at_q.precision();
  const double target = static_cast<double>(prec) + 16.0;
  auto needed = [&](double exponent) {
    double bits = target - exponent * log2_inv_abs_q + 32.0;
    return static_cast<mpfr_prec_t>(std::clamp(bits, 64.0, static_cast<double>(prec)));
  };
  BigComplex q_k(prec), q_step(prec), q3(prec), pent(prec), plus(prec), sq(prec), q1(prec);
  // q_k = q^k, pent = q^{k(3k-1)/2}, plus = q^{k(3k+1)/2}, q_step = q^{3k+1}; q1 is q at shrinking precision
  scratch.square(q3, q);
  scratch.mul(q3, q3, q);
  q_k = q;
  q1 = q;
  pent.set_ui(1);
  q_step = q;
  at_q.set_ui(1);
  at_q2.set_ui(1);
  bool q2_done = false;
  for (long k = 1;; ++k) {
    const double kd = static_cast<double>(k);
    const bool odd = (k % 2 == 1);
    scratch.mul(pent, pent, q_step);
    if (k > 1) scratch.mul(q_k, q_k, q1);
    scratch.mul(plus, pent, q_k);
    for (const BigComplex* t : {&pent, &plus}) {
      if (odd) {
        ComplexScratch::sub(at_q, at_q, *t);
      } else {
        ComplexScratch::add(at_q, at_q, *t);
      }
      if (!q2_done) {
        scratch.square(sq, *t);
        if (odd) {
          ComplexScratch::sub(at_q2, at_q2, sq);
        } else {
          ComplexScratch::add(at_q2, at_q2, sq);
        }
      }
    }
    const double plus_exponent = kd * (3.0 * kd + 1.0) / 2.0;
    if (2.0 * plus_exponent * log2_inv_abs_q > target) q2_done = true;
    if (plus_exponent * log2_inv_abs_q > target) break;
    scratch.mul(q_step, q_step, q3);
    const mpfr_prec_t next = needed((kd + 1.0) * (3.0 * kd + 2.0) / 2.0);
    for (BigComplex* v : {&pent, &q_step, &q3, &q_k, &plus, &sq, &q1}) v->round_to(next);
  }
}

}  // namespace detail
/// j from the nome q = e^{2 pi i tau}, via j = (256 f + 1)^3 / f with f = Delta(2 tau) / Delta(tau).
inline BigComplex j_from_nome(const BigComplex& q, double log2_inv_abs_q, mpfr_prec_t prec) {
  ComplexScratch scratch(prec);
  BigComplex e1(prec), e2(prec), ratio(prec), f(prec), r2(prec);
  detail::euler_products(e1, e2, q, log2_inv_abs_q, scratch);
  scratch.div(ratio, e2, e1);
  // f = q * ratio^24
  scratch.square(r2, ratio);     // 2
  scratch.square(r2, r2);        // 4
  scratch.square(r2, r2);        // 8
  scratch.square(ratio, r2);     // 16
  scratch.mul(ratio, ratio, r2); // 24
  scratch.mul(f, ratio, q);

  BigComplex num(prec), cube(prec);
  mpfr_mul_ui(num.re.get(), f.re.get(), 256, MPFR_RNDN);
  mpfr_add_ui(num.re.get(), num.re.get(), 1, MPFR_RNDN);
  mpfr_mul_ui(num.im.get(), f.im.get(), 256, MPFR_RNDN);
  scratch.square(cube, num);
  scratch.mul(cube, cube, num);
  BigComplex j(prec);
  scratch.div(j, cube, f);
  return j;
}

/// gamma_2 = (256 f + 1) / (eta(2 tau) / eta(tau))^8 from q and q13 = e^{2 pi i tau / 3}.
inline BigComplex gamma2_from_nome(const BigComplex& q, const BigComplex& q13, double log2_inv_abs_q, mpfr_prec_t prec) {
  ComplexScratch scratch(prec);
  BigComplex e1(prec), e2(prec), ratio(prec), r8(prec), f(prec);
  detail::euler_products(e1, e2, q, log2_inv_abs_q, scratch);
  scratch.div(ratio, e2, e1);
  scratch.square(r8, ratio);
  scratch.square(r8, r8);
  scratch.square(r8, r8);
  scratch.square(f, r8);
  scratch.mul(f, f, r8);
  scratch.mul(f, f, q);
  mpfr_mul_ui(f.re.get(), f.re.get(), 256, MPFR_RNDN);
  mpfr_add_ui(f.re.get(), f.re.get(), 1, MPFR_RNDN);
  mpfr_mul_ui(f.im.get(), f.im.get(), 256, MPFR_RNDN);
  scratch.mul(r8, r8, q13);
  BigComplex g(prec);
  scratch.div(g, f, r8);
  return g;
}

/// log2(1 / |q|) = pi sqrt|d| / (a ln 2) for the form's nome.
inline double nome_log2_inverse(const BinaryQF& form) {
  return M_PI * std::sqrt(static_cast<double>(-form.discriminant())) / static_cast<double>(form.a) / std::log(2.0);
}

/// j((-b + sqrt(d)) / 2a) for a reduced form of discriminant d < 0, computing the nome directly.
inline BigComplex j_invariant(const BinaryQF& form, mpfr_prec_t prec) {
  const i64 abs_disc = -form.discriminant();
  BigFloat pi(prec), radius(prec), angle(prec), tmp(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);

  // |q| = exp(-pi sqrt|d| / a), arg q = -pi b / a
  mpfr_set_si(tmp.get(), abs_disc, MPFR_RNDN);
  mpfr_sqrt(tmp.get(), tmp.get(), MPFR_RNDN);
  mpfr_mul(tmp.get(), tmp.get(), pi.get(), MPFR_RNDN);
  mpfr_div_si(tmp.get(), tmp.get(), form.a, MPFR_RNDN);
  mpfr_neg(tmp.get(), tmp.get(), MPFR_RNDN);
  mpfr_exp(radius.get(), tmp.get(), MPFR_RNDN);

  BigComplex q(prec);
  mpfr_mul_si(angle.get(), pi.get(), -form.b, MPFR_RNDN);
  mpfr_div_si(angle.get(), angle.get(), form.a, MPFR_RNDN);
  mpfr_sin_cos(q.im.get(), q.re.get(), angle.get(), MPFR_RNDN);
  mpfr_mul(q.re.get(), q.re.get(), radius.get(), MPFR_RNDN);
  mpfr_mul(q.im.get(), q.im.get(), radius.get(), MPFR_RNDN);
  return j_from_nome(q, nome_log2_inverse(form), prec);
}

namespace detail {

inline mpfr_prec_t round_up_precision(mpfr_prec_t bits) { return (bits + 1023) / 1024 * 1024; }

/// e^{-i pi n / d} for 0 <= n < 2d (lowest terms), memoized for the whole process: the same
/// few thousand phases recur across every discriminant.
inline void root_of_unity(BigComplex& out, i64 n, i64 d) {
  static std::mutex mutex;
  static std::map<std::pair<i64, i64>, BigComplex> table;
  const mpfr_prec_t prec = out.precision();
  std::lock_guard<std::mutex> lock(mutex);
  auto it = table.find({n, d});
  if (it == table.end() || it->second.precision() < prec) {
    const mpfr_prec_t stored = round_up_precision(prec + 32);
    BigComplex z(stored);
    BigFloat angle(stored);
    mpfr_const_pi(angle.get(), MPFR_RNDN);
    mpfr_mul_si(angle.get(), angle.get(), -n, MPFR_RNDN);
    mpfr_div_si(angle.get(), angle.get(), d, MPFR_RNDN);
    mpfr_sin_cos(z.im.get(), z.re.get(), angle.get(), MPFR_RNDN);
    it = table.insert_or_assign({n, d}, std::move(z)).first;
  }
  mpfr_set(out.re.get(), it->second.re.get(), MPFR_RNDN);
  mpfr_set(out.im.get(), it->second.im.get(), MPFR_RNDN);
}

/// Nomes for discriminants sharing one fundamental part d0. With d = d0 f^2 and g = gcd(a, f),
/// |q| = exp(-pi sqrt|d0| / (a/g))^(f/g), so one exponential serves every conductor.
class NomeTable {
 public:
  explicit NomeTable(i64 fundamental) : fundamental_(fundamental) {}

  i64 fundamental() const { return fundamental_; }

  void nome(BigComplex& q, const BinaryQF& form, i64 conductor) {
    const mpfr_prec_t prec = q.precision();
    const i64 g = std::gcd(form.a, conductor);
    const i64 a = form.a / g;
    const unsigned long e = static_cast<unsigned long>(conductor / g);
    // relative error grows by about e when powering
    const mpfr_prec_t need = prec + 16 + static_cast<mpfr_prec_t>(std::bit_width(e));
    const BigFloat& base = modulus(a, need);
    BigFloat radius(need);
    mpfr_pow_ui(radius.get(), base.get(), e, MPFR_RNDN);

    i64 n = form.b % (2 * form.a);
    if (n < 0) n += 2 * form.a;
    const i64 h = std::gcd(n, form.a);
    root_of_unity(q, n / h, form.a / h);
    mpfr_mul(q.re.get(), q.re.get(), radius.get(), MPFR_RNDN);
    mpfr_mul(q.im.get(), q.im.get(), radius.get(), MPFR_RNDN);
  }

  // e^{2 pi i (tau + k) / 3} for tau the form's root; |.| = |q|^{1/3}
  void nome_third(BigComplex& out, const BinaryQF& form, i64 conductor, i64 k) {
    const mpfr_prec_t prec = out.precision();
    const i64 g = std::gcd(form.a, conductor);
    const unsigned long e = static_cast<unsigned long>(conductor / g);
    const mpfr_prec_t need = prec + 16 + static_cast<mpfr_prec_t>(std::bit_width(e));
    BigFloat radius(need);
    mpfr_cbrt(radius.get(), modulus(form.a / g, need).get(), MPFR_RNDN);
    mpfr_pow_ui(radius.get(), radius.get(), e, MPFR_RNDN);

    i64 n = (form.b - 2 * k * form.a) % (6 * form.a);
    if (n < 0) n += 6 * form.a;
    const i64 h = std::gcd(n, 3 * form.a);
    root_of_unity(out, n / h, 3 * form.a / h);
    mpfr_mul(out.re.get(), out.re.get(), radius.get(), MPFR_RNDN);
    mpfr_mul(out.im.get(), out.im.get(), radius.get(), MPFR_RNDN);
  }

 private:
  const BigFloat& modulus(i64 a, mpfr_prec_t prec) {
    auto it = moduli_.find(a);
    if (it != moduli_.end() && it->second.precision() >= prec) return it->second;
    const mpfr_prec_t stored = round_up_precision(prec);
    BigFloat x(stored);
    mpfr_const_pi(x.get(), MPFR_RNDN);
    BigFloat root(stored, -fundamental_);
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    mpfr_mul(x.get(), x.get(), root.get(), MPFR_RNDN);
    mpfr_div_si(x.get(), x.get(), -a, MPFR_RNDN);
    mpfr_exp(x.get(), x.get(), MPFR_RNDN);
    return moduli_.insert_or_assign(a, std::move(x)).first->second;
  }

  i64 fundamental_;
  std::map<i64, BigFloat> moduli_;
};

// Fixed-point integer polynomials: value = coefficient / 2^frac. A node whose coefficients reach
// 2^height keeps frac = prec - height, enough for the final coefficients to stay within 1/4 once
// multiplied by the rest of the tree. Products go through Kronecker substitution so GMP's
// subquadratic multiplication does the work.
struct FixedPoly {
  std::vector<BigInt> coeffs;
  long frac = 0;
};

inline std::size_t max_bits(const std::vector<BigInt>& p) {
  std::size_t bits = 1;
  for (const auto& c : p) bits = std::max(bits, mpz_sizeinbase(c.get(), 2));
  return bits;
}

inline void pack(mpz_t out, const std::vector<BigInt>& p, std::size_t lo, std::size_t hi, mp_bitcnt_t width) {
  if (hi - lo == 1) {
    mpz_set(out, p[lo].get());
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  mpz_t upper;
  mpz_init(upper);
  pack(out, p, lo, mid, width);
  pack(upper, p, mid, hi, width);
  mpz_mul_2exp(upper, upper, width * (mid - lo));
  mpz_add(out, out, upper);
  mpz_clear(upper);
}

// Inverse of pack for signed digits with |digit| < 2^(width - 2).
inline void unpack(mpz_t x, std::vector<BigInt>& out, std::size_t lo, std::size_t hi, mp_bitcnt_t width) {
  if (hi - lo == 1) {
    mpz_set(out[lo].get(), x);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const mp_bitcnt_t shift = width * (mid - lo);
  mpz_t low;
  mpz_init(low);
  mpz_fdiv_r_2exp(low, x, shift);
  if (mpz_tstbit(low, shift - 1)) {
    mpz_t full;
    mpz_init(full);
    mpz_setbit(full, shift);
    mpz_sub(low, low, full);
    mpz_clear(full);
  }
  mpz_sub(x, x, low);
  mpz_tdiv_q_2exp(x, x, shift);
  unpack(low, out, lo, mid, width);
  unpack(x, out, mid, hi, width);
  mpz_clear(low);
}

inline FixedPoly fixed_mul(const FixedPoly& a, const FixedPoly& b, long prec) {
  const std::size_t terms = std::min(a.coeffs.size(), b.coeffs.size());
  const mp_bitcnt_t width = max_bits(a.coeffs) + max_bits(b.coeffs) + std::bit_width(terms) + 2;
  mpz_t x, y;
  mpz_inits(x, y, nullptr);
  pack(x, a.coeffs, 0, a.coeffs.size(), width);
  pack(y, b.coeffs, 0, b.coeffs.size(), width);
  mpz_mul(x, x, y);
  FixedPoly out{std::vector<BigInt>(a.coeffs.size() + b.coeffs.size() - 1), a.frac + b.frac};
  unpack(x, out.coeffs, 0, out.coeffs.size(), width);
  const long height = std::max(0L, static_cast<long>(max_bits(out.coeffs)) - out.frac);
  const long frac = std::min(out.frac, std::max(prec - height, 2L));
  if (frac < out.frac) {
    const mp_bitcnt_t shift = static_cast<mp_bitcnt_t>(out.frac - frac);
    mpz_set_ui(y, 0);
    mpz_setbit(y, shift - 1);
    for (auto& c : out.coeffs) {
      mpz_add(c.get(), c.get(), y);
      mpz_fdiv_q_2exp(c.get(), c.get(), shift);
    }
    out.frac = frac;
  }
  mpz_clears(x, y, nullptr);
  return out;
}

inline FixedPoly fixed_product(std::vector<FixedPoly> factors, long prec) {
  while (factors.size() > 1) {
    std::vector<FixedPoly> next;
    next.reserve((factors.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < factors.size(); i += 2) next.push_back(fixed_mul(factors[i], factors[i + 1], prec));
    if (factors.size() % 2 == 1) next.push_back(std::move(factors.back()));
    factors = std::move(next);
  }
  return std::move(factors.front());
}

// gamma_2 is a class invariant for 3 not dividing d at roots of forms (A, B, C) with 3 | B.
// gamma_2(tau + 1) = zeta_3^{-1} gamma_2(tau) and gamma_2(-1/tau) = gamma_2(tau), so the value at
// such a form equivalent to f is gamma_2(tau_f + k) for the k returned here: translate f when
// 3 does not divide a, else translate (c, -b, a).
inline i64 gamma2_shift(const BinaryQF& f) {
  const i64 lead = f.a % 3 != 0 ? f.a : f.c;
  const i64 sign = f.a % 3 != 0 ? 1 : -1;
  // B = sign * b - 2 lead k = 0 (mod 3), and (2 lead)^{-1} = 2 lead (mod 3)
  i64 k = sign * f.b % 3 * (2 * lead % 3) % 3;
  if (k < 0) k += 3;
  // when 3 divides a the value is gamma_2(S tau + k) = zeta^{-k} gamma_2(tau), the same as at tau + k
  return k;
}

// Pairs (a, b, c) with (a, -b, c) when both are reduced and distinct; their j values are conjugate.
inline bool has_conjugate_partner(const BinaryQF& f) { return f.b != 0 && f.b != f.a && f.a != f.c; }

inline std::optional<std::vector<BigInt>> try_class_polynomial(const Discriminant& disc, const std::vector<BinaryQF>& forms,
                                                               long bits, NomeTable& nomes, bool gamma2 = false) {
  const mpfr_prec_t prec = bits;
  BigFloat scaled(prec), norm(prec);
  BigComplex q(prec), q13(prec);
  ComplexScratch scratch(prec);
  auto fixed = [&](mpfr_srcptr v, long multiplier, long frac) {
    BigInt z;
    mpfr_mul_si(scaled.get(), v, multiplier, MPFR_RNDN);
    mpfr_mul_2si(scaled.get(), scaled.get(), frac, MPFR_RNDN);
    mpfr_get_z(z.get(), scaled.get(), MPFR_RNDN);
    return z;
  };
  auto power_of_two = [](long e) {
    BigInt z;
    mpz_setbit(z.get(), static_cast<mp_bitcnt_t>(e));
    return z;
  };
  // leaf fraction: prec minus the bit height of the largest coefficient
  auto leaf_frac = [&](mpfr_srcptr largest) {
    const long height = mpfr_zero_p(largest) ? 0 : std::max(0L, static_cast<long>(mpfr_get_exp(largest)));
    return std::max(prec - height, 2L);
  };

  std::vector<FixedPoly> factors;
  for (const auto& f : forms) {
    if (has_conjugate_partner(f) && f.b < 0) continue;
    nomes.nome(q, f, disc.conductor);
    BigComplex j(prec);
    if (gamma2) {
      nomes.nome_third(q13, f, disc.conductor, gamma2_shift(f));
      j = gamma2_from_nome(q, q13, nome_log2_inverse(f), prec);
    } else {
      j = j_from_nome(q, nome_log2_inverse(f), prec);
    }
    if (has_conjugate_partner(f)) {
      // (X - j)(X - conj j) = X^2 - 2 Re(j) X + |j|^2
      scratch.norm(norm, j);
      const long frac = leaf_frac(norm.get());
      factors.push_back({{fixed(norm.get(), 1, frac), fixed(j.re.get(), -2, frac), power_of_two(frac)}, frac});
    } else {
      const long frac = leaf_frac(j.re.get());
      factors.push_back({{fixed(j.re.get(), -1, frac), power_of_two(frac)}, frac});
    }
  }
  const FixedPoly poly = fixed_product(std::move(factors), prec);
  if (poly.frac < 3) return std::nullopt;

  const auto frac = static_cast<mp_bitcnt_t>(poly.frac);
  std::vector<BigInt> coeffs(poly.coeffs.size());
  mpz_t half, quarter, residual;
  mpz_inits(half, quarter, residual, nullptr);
  mpz_setbit(half, frac - 1);
  mpz_setbit(quarter, frac - 2);
  bool ok = true;
  for (std::size_t k = 0; k < coeffs.size() && ok; ++k) {
    mpz_add(coeffs[k].get(), poly.coeffs[k].get(), half);
    mpz_fdiv_q_2exp(coeffs[k].get(), coeffs[k].get(), frac);
    mpz_mul_2exp(residual, coeffs[k].get(), frac);
    mpz_sub(residual, poly.coeffs[k].get(), residual);
    ok = mpz_cmpabs(residual, quarter) < 0;
  }
  mpz_clears(half, quarter, residual, nullptr);
  if (!ok || mpz_cmp_ui(coeffs.back().get(), 1) != 0) return std::nullopt;
  return coeffs;
}

inline std::vector<BigInt> int_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  const std::size_t terms = std::min(a.size(), b.size());
  const mp_bitcnt_t width = max_bits(a) + max_bits(b) + std::bit_width(terms) + 3;
  mpz_t x, y;
  mpz_inits(x, y, nullptr);
  pack(x, a, 0, a.size(), width);
  pack(y, b, 0, b.size(), width);
  mpz_mul(x, x, y);
  std::vector<BigInt> out(a.size() + b.size() - 1);
  unpack(x, out, 0, out.size(), width);
  mpz_clears(x, y, nullptr);
  return out;
}

// H(X^3) = W(X) W(zeta X) W(zeta^2 X). Writing W = A(X^3) + X B(X^3) + X^2 C(X^3), this is the
// norm A^3 + Y B^3 + Y^2 C^3 - 3 Y A B C with Y = X^3.
inline std::vector<BigInt> cube_class_polynomial(const std::vector<BigInt>& w) {
  std::vector<BigInt> parts[3];
  for (std::size_t k = 0; k < w.size(); ++k) parts[k % 3].push_back(w[k]);
  for (auto& p : parts) {
    if (p.empty()) p.emplace_back();
  }
  auto cube = [](const std::vector<BigInt>& p) { return int_mul(int_mul(p, p), p); };
  const auto a3 = cube(parts[0]), b3 = cube(parts[1]), c3 = cube(parts[2]);
  const auto abc = int_mul(int_mul(parts[0], parts[1]), parts[2]);
  std::vector<BigInt> h(w.size());
  auto add = [&](const std::vector<BigInt>& p, std::size_t shift, long scale) {
    for (std::size_t k = 0; k < p.size() && k + shift < h.size(); ++k) {
      if (scale == 1) {
        mpz_add(h[k + shift].get(), h[k + shift].get(), p[k].get());
      } else {
        mpz_submul_ui(h[k + shift].get(), p[k].get(), static_cast<unsigned long>(-scale));
      }
    }
  };
  add(a3, 0, 1);
  add(b3, 1, 1);
  add(c3, 2, 1);
  add(abc, 1, -3);
  return h;
}

}  // namespace detail

/// Hilbert class polynomial by floating-point evaluation of j at the reduced forms, with
/// self-certifying rounding (every coefficient within 1/4 of an integer) and precision doubling.
/// A NomeTable for the same fundamental discriminant may be passed to share exponentials.
inline ClassPolynomial hilbert_class_polynomial(const Discriminant& disc, const ClassPolynomialOptions& options = {},
                                                detail::NomeTable* nomes = nullptr) {
  if (disc.abs() > options.max_abs_discriminant) {
    throw Error(ErrorCode::InvalidArgument, "|discriminant| " + std::to_string(disc.abs()) + " exceeds bound " +
                                                std::to_string(options.max_abs_discriminant));
  }
  std::optional<detail::NomeTable> local;
  if (nomes == nullptr || nomes->fundamental() != disc.fundamental) nomes = &local.emplace(disc.fundamental);
  const auto forms = reduced_forms(disc);
  if (options.use_gamma2 && options.precision_bits <= 0 && disc.value % 3 != 0) {
    long bits = class_polynomial_precision(disc, forms, options.margin_per_form, 3);
    for (int attempt = 0; attempt <= options.retries; ++attempt, bits *= 2) {
      if (auto w = detail::try_class_polynomial(disc, forms, bits, *nomes, true)) {
        return {disc, detail::cube_class_polynomial(*w)};
      }
    }
  }
  long bits = options.precision_bits > 0 ? options.precision_bits : class_polynomial_precision(disc, forms, options.margin_per_form);
  for (int attempt = 0; attempt <= options.retries; ++attempt, bits *= 2) {
    if (auto coeffs = detail::try_class_polynomial(disc, forms, bits, *nomes)) return {disc, std::move(*coeffs)};
  }
  throw Error(ErrorCode::PrecisionExhausted, "class polynomial of " + std::to_string(disc.value) +
                                                 " failed the rounding check at " + std::to_string(bits / 2) + " bits");
}

inline ClassPolynomial hilbert_class_polynomial(i64 disc) { return hilbert_class_polynomial(decompose_discriminant(disc)); }

// ---------------------------------------------------------------------------
// On-disk cache: one text file per discriminant, written once through an atomic rename.
//   line 1: "HCP 1 <disc> <h>"; then h+1 lines of base-10 coefficients, constant term first.

inline std::string format_class_polynomial(const ClassPolynomial& poly) {
  std::ostringstream out;
  out << "HCP 1 " << poly.discriminant.value << ' ' << poly.degree() << '\n';
  for (const auto& c : poly.coefficients) out << c.str() << '\n';
  return out.str();
}

inline ClassPolynomial parse_class_polynomial(std::istream& in) {
  std::string magic;
  int version = 0;
  i64 disc = 0, degree = -1;
  if (!(in >> magic >> version >> disc >> degree) || magic != "HCP" || version != 1 || degree < 0) {
    throw Error(ErrorCode::CacheCorrupt, "bad class polynomial header");
  }
  ClassPolynomial poly{decompose_discriminant(disc), {}};
  std::string token;
  for (i64 k = 0; k <= degree; ++k) {
    if (!(in >> token)) throw Error(ErrorCode::CacheCorrupt, "truncated class polynomial for " + std::to_string(disc));
    poly.coefficients.emplace_back(token);
  }
  if (in >> token) throw Error(ErrorCode::CacheCorrupt, "trailing data in class polynomial for " + std::to_string(disc));
  if (mpz_cmp_ui(poly.coefficients.back().get(), 1) != 0) {
    throw Error(ErrorCode::CacheCorrupt, "class polynomial for " + std::to_string(disc) + " is not monic");
  }
  return poly;
}

class ClassPolynomialCache {
 public:
  /// An empty directory disables the disk layer.
  explicit ClassPolynomialCache(std::filesystem::path directory = {}, ClassPolynomialOptions options = {})
      : directory_(std::move(directory)), options_(options) {
    if (!directory_.empty()) std::filesystem::create_directories(directory_);
  }

  const std::filesystem::path& directory() const { return directory_; }
  const ClassPolynomialOptions& options() const { return options_; }

  std::filesystem::path path_for(i64 disc) const { return directory_ / ("hcp_" + std::to_string(-disc) + ".txt"); }

  ClassPolynomial get(const Discriminant& disc) const {
    if (directory_.empty()) return hilbert_class_polynomial(disc, options_);
    const auto path = path_for(disc.value);
    if (std::ifstream in(path); in) {
      ClassPolynomial poly = parse_class_polynomial(in);
      if (poly.discriminant.value != disc.value || poly.degree() != class_number(disc)) {
        throw Error(ErrorCode::CacheCorrupt, "cache entry " + path.string() + " does not match its key");
      }
      return poly;
    }
    ClassPolynomial poly = hilbert_class_polynomial(disc, options_);
    write_once(path, format_class_polynomial(poly));
    return poly;
  }

  ClassPolynomial get(i64 disc) const { return get(decompose_discriminant(disc)); }

  bool contains(const Discriminant& disc) const { return !directory_.empty() && std::filesystem::exists(path_for(disc.value)); }

  /// Computes and stores every missing entry. Discriminants are grouped by fundamental part so
  /// each group shares its exponentials; groups run on up to `jobs` threads, largest first.
  /// Returns the number of polynomials computed.
  std::size_t prefetch(const std::vector<Discriminant>& discs, int jobs = 1) const {
    if (directory_.empty()) return 0;
    std::map<i64, std::vector<Discriminant>> groups;
    for (const auto& d : discs) {
      if (!contains(d)) groups[d.fundamental].push_back(d);
    }
    std::vector<std::vector<Discriminant>> work;
    for (auto& [fundamental, members] : groups) {
      std::sort(members.begin(), members.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
      members.erase(std::unique(members.begin(), members.end()), members.end());
      work.push_back(std::move(members));
    }
    std::sort(work.begin(), work.end(), [](const auto& x, const auto& y) { return x.front().value < y.front().value; });
    std::atomic<std::size_t> computed{0};
    parallel_for(work.size(), jobs, [&](std::size_t i) {
      detail::NomeTable nomes(work[i].front().fundamental);
      for (const auto& d : work[i]) {
        write_once(path_for(d.value), format_class_polynomial(hilbert_class_polynomial(d, options_, &nomes)));
        ++computed;
      }
    });
    return computed;
  }

 private:
  static void write_once(const std::filesystem::path& path, const std::string& contents) {
    std::random_device rd;
    std::ostringstream suffix;
    suffix << ".tmp." << std::this_thread::get_id() << '.' << rd();
    auto tmp = path;
    tmp += suffix.str();
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << contents;
      if (!out) throw Error(ErrorCode::CacheCorrupt, "cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);  // same contents whichever writer wins
    if (ec) {
      std::filesystem::remove(tmp);
      throw Error(ErrorCode::CacheCorrupt, "cannot publish " + path.string() + ": " + ec.message());
    }
  }

  std::filesystem::path directory_;
  ClassPolynomialOptions options_;
};

}  // namespace singmod
