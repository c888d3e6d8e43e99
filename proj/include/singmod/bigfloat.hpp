#pragma once

#include <mpfr.h>

#include <utility>

namespace singmod {

/// Owning MPFR value with a fixed precision chosen at construction.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision) { mpfr_init2(value_, precision); mpfr_set_zero(value_, 1); }
  BigFloat(mpfr_prec_t precision, long v) { mpfr_init2(value_, precision); mpfr_set_si(value_, v, MPFR_RNDN); }
  BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(value_); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

/// Complex number as two BigFloats; arithmetic goes through caller-owned scratch to avoid churn.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(mpfr_prec_t precision) : re(precision), im(precision) {}

  mpfr_prec_t precision() const { return re.precision(); }

  /// Rounds both parts to a new precision in place.
  void round_to(mpfr_prec_t precision) {
    mpfr_prec_round(re.get(), precision, MPFR_RNDN);
    mpfr_prec_round(im.get(), precision, MPFR_RNDN);
  }

  void set_ui(unsigned long v) {
    mpfr_set_ui(re.get(), v, MPFR_RNDN);
    mpfr_set_zero(im.get(), 1);
  }
};

class ComplexScratch {
 public:
  explicit ComplexScratch(mpfr_prec_t precision) : t1_(precision), t2_(precision), t3_(precision), t4_(precision) {}

  // out = x * y with three real products; out may alias x or y.
  void mul(BigComplex& out, const BigComplex& x, const BigComplex& y) {
    mpfr_mul(t1_.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t2_.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_add(t3_.get(), x.re.get(), x.im.get(), MPFR_RNDN);
    mpfr_add(t4_.get(), y.re.get(), y.im.get(), MPFR_RNDN);
    mpfr_mul(t3_.get(), t3_.get(), t4_.get(), MPFR_RNDN);
    mpfr_sub(out.re.get(), t1_.get(), t2_.get(), MPFR_RNDN);
    mpfr_sub(t3_.get(), t3_.get(), t1_.get(), MPFR_RNDN);
    mpfr_sub(out.im.get(), t3_.get(), t2_.get(), MPFR_RNDN);
  }

  void square(BigComplex& out, const BigComplex& x) {
    mpfr_add(t1_.get(), x.re.get(), x.im.get(), MPFR_RNDN);
    mpfr_sub(t2_.get(), x.re.get(), x.im.get(), MPFR_RNDN);
    mpfr_mul(t3_.get(), x.re.get(), x.im.get(), MPFR_RNDN);
    mpfr_mul(out.re.get(), t1_.get(), t2_.get(), MPFR_RNDN);
    mpfr_mul_2ui(out.im.get(), t3_.get(), 1, MPFR_RNDN);
  }

  // out = x / y; out may alias x or y.
  void div(BigComplex& out, const BigComplex& x, const BigComplex& y) {
    mpfr_sqr(t1_.get(), y.re.get(), MPFR_RNDN);
    mpfr_sqr(t2_.get(), y.im.get(), MPFR_RNDN);
    mpfr_add(t1_.get(), t1_.get(), t2_.get(), MPFR_RNDN);  // |y|^2
    mpfr_mul(t2_.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t3_.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_add(t2_.get(), t2_.get(), t3_.get(), MPFR_RNDN);
    mpfr_mul(t3_.get(), x.im.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t4_.get(), x.re.get(), y.im.get(), MPFR_RNDN);
    mpfr_sub(t3_.get(), t3_.get(), t4_.get(), MPFR_RNDN);
    mpfr_div(out.re.get(), t2_.get(), t1_.get(), MPFR_RNDN);
    mpfr_div(out.im.get(), t3_.get(), t1_.get(), MPFR_RNDN);
  }

  static void add(BigComplex& out, const BigComplex& x, const BigComplex& y) {
    mpfr_add(out.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_add(out.im.get(), x.im.get(), y.im.get(), MPFR_RNDN);
  }

  static void sub(BigComplex& out, const BigComplex& x, const BigComplex& y) {
    mpfr_sub(out.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_sub(out.im.get(), x.im.get(), y.im.get(), MPFR_RNDN);
  }

  void norm(BigFloat& out, const BigComplex& x) {
    mpfr_sqr(t1_.get(), x.re.get(), MPFR_RNDN);
    mpfr_sqr(t2_.get(), x.im.get(), MPFR_RNDN);
    mpfr_add(out.get(), t1_.get(), t2_.get(), MPFR_RNDN);
  }

 private:
  BigFloat t1_, t2_, t3_, t4_;
};

}  // namespace singmod
