#pragma once

// Closed intervals of MPFR floats with outward (directed) rounding.
// Internal to the library; the public surface only sees doubles.

#include <mpfr.h>

#include <gmpxx.h>

namespace codiv::detail {

class BigFloat {
public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat &o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat &operator=(const BigFloat &o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t prec() const noexcept { return mpfr_get_prec(v_); }

private:
  mpfr_t v_;
};

class BigInterval {
public:
  explicit BigInterval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

  static BigInterval point(long v, mpfr_prec_t prec);
  static BigInterval from_q(const mpq_class &q, mpfr_prec_t prec);
  /// [lo, hi] from two rationals, lo <= hi.
  static BigInterval hull_q(const mpq_class &lo, const mpq_class &hi,
                            mpfr_prec_t prec);
  /// [-e, e] with e rounded up.
  static BigInterval symmetric(const BigFloat &e);

  BigFloat &lo() noexcept { return lo_; }
  BigFloat &hi() noexcept { return hi_; }
  const BigFloat &lo() const noexcept { return lo_; }
  const BigFloat &hi() const noexcept { return hi_; }
  mpfr_prec_t prec() const noexcept { return lo_.prec(); }

  double lo_down() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
  double hi_up() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }

  BigInterval &operator+=(const BigInterval &o);
  BigInterval &operator-=(const BigInterval &o);
  BigInterval &operator*=(const BigInterval &o);
  /// Multiply by an exact rational (either sign).
  BigInterval &mul_q(const mpq_class &q);

  /// Intersect with [lo, hi]; leaves *this unchanged where it is tighter.
  void clamp(long lo, long hi);
  void clamp_below(const BigFloat &lo);
  void clamp_above(const BigFloat &hi);

private:
  BigFloat lo_, hi_;
};

BigInterval operator+(BigInterval a, const BigInterval &b);
BigInterval operator-(BigInterval a, const BigInterval &b);
BigInterval operator*(BigInterval a, const BigInterval &b);
BigInterval exp(const BigInterval &a);
BigInterval neg(const BigInterval &a);

} // namespace codiv::detail
