#include "big_interval.hpp"

#include <algorithm>

namespace codiv::detail {

BigInterval BigInterval::point(long v, mpfr_prec_t prec) {
  BigInterval out(prec);
  mpfr_set_si(out.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(out.hi_.get(), v, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::from_q(const mpq_class &q, mpfr_prec_t prec) {
  return hull_q(q, q, prec);
}

BigInterval BigInterval::hull_q(const mpq_class &lo, const mpq_class &hi,
                                mpfr_prec_t prec) {
  BigInterval out(prec);
  mpfr_set_q(out.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
  return out;
}

BigInterval BigInterval::symmetric(const BigFloat &e) {
  BigInterval out(e.prec());
  mpfr_neg(out.lo_.get(), e.get(), MPFR_RNDD);
  mpfr_set(out.hi_.get(), e.get(), MPFR_RNDU);
  return out;
}

BigInterval &BigInterval::operator+=(const BigInterval &o) {
  mpfr_add(lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return *this;
}

BigInterval &BigInterval::operator-=(const BigInterval &o) {
  // o may alias *this; read o.hi before lo_ is overwritten.
  BigFloat new_lo(prec());
  mpfr_sub(new_lo.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  lo_ = new_lo;
  return *this;
}

BigInterval &BigInterval::operator*=(const BigInterval &o) {
  const mpfr_prec_t p = prec();
  BigFloat lo(p), hi(p), t(p);
  bool first = true;
  for (const BigFloat *a : {&lo_, &hi_}) {
    for (const BigFloat *b : {&o.lo_, &o.hi_}) {
      mpfr_mul(t.get(), a->get(), b->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get()))
        lo = t;
      mpfr_mul(t.get(), a->get(), b->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get()))
        hi = t;
      first = false;
    }
  }
  lo_ = lo;
  hi_ = hi;
  return *this;
}

BigInterval &BigInterval::mul_q(const mpq_class &q) {
  return *this *= from_q(q, prec());
}

void BigInterval::clamp(long lo, long hi) {
  if (mpfr_cmp_si(lo_.get(), lo) < 0)
    mpfr_set_si(lo_.get(), lo, MPFR_RNDD);
  if (mpfr_cmp_si(hi_.get(), hi) > 0)
    mpfr_set_si(hi_.get(), hi, MPFR_RNDU);
  if (mpfr_cmp_si(lo_.get(), hi) > 0)
    mpfr_set_si(lo_.get(), hi, MPFR_RNDD);
  if (mpfr_cmp_si(hi_.get(), lo) < 0)
    mpfr_set_si(hi_.get(), lo, MPFR_RNDU);
}

void BigInterval::clamp_below(const BigFloat &lo) {
  if (mpfr_less_p(lo_.get(), lo.get()))
    mpfr_set(lo_.get(), lo.get(), MPFR_RNDD);
}

void BigInterval::clamp_above(const BigFloat &hi) {
  if (mpfr_greater_p(hi_.get(), hi.get()))
    mpfr_set(hi_.get(), hi.get(), MPFR_RNDU);
}

BigInterval operator+(BigInterval a, const BigInterval &b) { return a += b; }
BigInterval operator-(BigInterval a, const BigInterval &b) { return a -= b; }
BigInterval operator*(BigInterval a, const BigInterval &b) { return a *= b; }

BigInterval exp(const BigInterval &a) {
  BigInterval out(a.prec());
  mpfr_exp(out.lo().get(), a.lo().get(), MPFR_RNDD);
  mpfr_exp(out.hi().get(), a.hi().get(), MPFR_RNDU);
  return out;
}

BigInterval neg(const BigInterval &a) {
  BigInterval out(a.prec());
  mpfr_neg(out.lo().get(), a.hi().get(), MPFR_RNDD);
  mpfr_neg(out.hi().get(), a.lo().get(), MPFR_RNDU);
  return out;
}

} // namespace codiv::detail
