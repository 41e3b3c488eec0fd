#include "codiv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <mpfr.h>

#include "big_interval.hpp"
#include "codiv/errors.hpp"
#include "euler_product.hpp"
#include "limitdist_internal.hpp"

namespace codiv {

namespace {

using detail::BigFloat;
using detail::down;
using detail::up;

double q_down(const mpq_class &q) {
  BigFloat x(128);
  mpfr_set_q(x.get(), q.get_mpq_t(), MPFR_RNDD);
  return mpfr_get_d(x.get(), MPFR_RNDD);
}

double q_up(const mpq_class &q) {
  BigFloat x(128);
  mpfr_set_q(x.get(), q.get_mpq_t(), MPFR_RNDU);
  return mpfr_get_d(x.get(), MPFR_RNDU);
}

// Rounding error of the double difference a - b (Knuth's TwoSum).
double sub_error(double a, double b, double d) {
  const double bb = d - a;
  return (a - (d - bb)) + (-b - bb);
}

// a - b for doubles, rounded down / up; exact differences are kept.
double sub_down(double a, double b) {
  const double d = a - b;
  return sub_error(a, b, d) >= 0 ? d : down(d);
}
double sub_up(double a, double b) {
  const double d = a - b;
  return sub_error(a, b, d) <= 0 ? d : up(d);
}

// e^{-num/den}, rounded down.
void exp_neg_down(BigFloat &out, unsigned long num, unsigned long den) {
  mpfr_set_ui(out.get(), num, MPFR_RNDU);
  mpfr_div_ui(out.get(), out.get(), den, MPFR_RNDU);
  mpfr_neg(out.get(), out.get(), MPFR_RNDD);
  mpfr_exp(out.get(), out.get(), MPFR_RNDD);
}

// The checks read lhs >= 1 - tail. Comparing 1 - lhs with the tail keeps
// full relative accuracy when the tail is far below the working precision.
void finish_tail_check(LemmaWitness &w, const BigFloat &tail_down) {
  const mpq_class miss = 1 - w.lhs_exact;
  w.pass = mpfr_cmp_q(tail_down.get(), miss.get_mpq_t()) >= 0;
  BigFloat rhs(tail_down.prec());
  mpfr_ui_sub(rhs.get(), 1, tail_down.get(), MPFR_RNDU);
  w.lhs = q_down(w.lhs_exact);
  w.rhs = mpfr_get_d(rhs.get(), MPFR_RNDU);
}

std::string n_q(std::uint64_t n, const mpq_class &q) {
  return "N=" + std::to_string(n) + ";q=" + q.get_str();
}

void check_r(std::uint32_t r) {
  if (r < 2)
    throw InvalidArgument("gap needs r >= 2, got r=" + std::to_string(r));
}

} // namespace

RealEnclosure gap(std::uint32_t r, double t, double eps) {
  check_r(r);
  const mpq_class b = binom_cdf_exact(BinomialSpec(r, mpq_class(1, 2)), t);
  const ProbInterval f = limit_cdf(r, t, eps);
  return {sub_down(q_down(b), f.hi), sub_up(q_up(b), f.lo)};
}

RealEnclosure gap_upper_bound_identity(std::uint32_t r, double t, double eps) {
  check_r(r);
  const ProbInterval odd = prime_product_cdf(r, t, eps, {.first_prime = 3});
  return {sub_down(1.0, odd.hi), sub_up(1.0, odd.lo)};
}

RealEnclosure gap_via_identity(std::uint32_t r, double t, double eps) {
  const mpq_class b = binom_cdf_exact(BinomialSpec(r, mpq_class(1, 2)), t);
  const RealEnclosure rest = gap_upper_bound_identity(r, t, eps);
  // Both factors are nonnegative.
  const double lo = std::max(0.0, rest.lo) * q_down(b);
  const double hi = rest.hi * q_up(b);
  return {lo == 0.0 ? 0.0 : down(lo), hi == 0.0 ? 0.0 : up(hi)};
}

LemmaWitness verify_hoeffding_lemma(std::uint64_t N, const mpq_class &q) {
  if (N < 2)
    throw InvalidArgument("Hoeffding lemma needs N >= 2");
  if (q <= 0 || q > mpq_class(1, 3))
    throw InvalidArgument("Hoeffding lemma needs 0 < q <= 1/3, got q=" +
                          q.get_str());
  LemmaWitness w;
  w.check = "hoeffding";
  w.params = n_q(N, q);
  w.lhs_exact = binom_cdf_exact(BinomialSpec(N, q), 3.0 * N / 8.0);
  BigFloat tail(128);
  exp_neg_down(tail, N, 300);
  finish_tail_check(w, tail);
  return w;
}

LemmaWitness verify_bennett_lemma(std::uint64_t N, const mpq_class &q) {
  if (N < 2)
    throw InvalidArgument("Bennett lemma needs N >= 2");
  if (q <= 0 || q > mpq_class(1, 64))
    throw InvalidArgument("Bennett lemma needs 0 < q <= 1/64, got q=" +
                          q.get_str());
  LemmaWitness w;
  w.check = "bennett";
  w.params = n_q(N, q);
  w.lhs_exact = binom_cdf_exact(BinomialSpec(N, q), 3.0 * N / 8.0);

  // q^{3N/16}, rounded down.
  BigFloat base(128), expo(128), tail(128);
  mpfr_set_q(base.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_ui(expo.get(), 3 * N, MPFR_RNDN);
  mpfr_div_2ui(expo.get(), expo.get(), 4, MPFR_RNDN);
  mpfr_pow(tail.get(), base.get(), expo.get(), MPFR_RNDD);
  finish_tail_check(w, tail);
  return w;
}

LemmaWitness verify_zeta_bound(unsigned s) {
  if (s < 3)
    throw InvalidArgument("zeta(s) <= 1 + 2^{1-s} is used for s >= 3");
  const auto z = detail::zeta_series(s, 1e-12);
  LemmaWitness w;
  w.check = "zeta_bound";
  w.params = "s=" + std::to_string(s);
  // 1 + 2^{1-s} is exact in binary.
  BigFloat bound(128);
  mpfr_set_ui_2exp(bound.get(), 1, 1 - static_cast<long>(s), MPFR_RNDN);
  mpfr_add_ui(bound.get(), bound.get(), 1, MPFR_RNDN);
  w.pass = mpfr_lessequal_p(z.hi().get(), bound.get());
  w.lhs = z.hi_up();
  w.rhs = mpfr_get_d(bound.get(), MPFR_RNDN);
  return w;
}

std::vector<LemmaWitness> verify_large_r_estimates(std::uint32_t r,
                                                   double eps) {
  if (r < 16)
    throw InvalidArgument("the large-r estimates assume r >= 16");
  std::vector<LemmaWitness> out;
  const std::string params = "r=" + std::to_string(r);
  const double three_eighths = 3.0 * r / 8.0;

  {
    // Symmetry of Bin(r, 1/2) plus Hoeffding for the lower tail.
    const BinomialSpec half(r, mpq_class(1, 2));
    LemmaWitness w;
    w.check = "small_t_tail";
    w.params = params;
    w.lhs_exact = binom_cdf_exact(half, three_eighths);
    // P(Bin >= 5r/8) = 1 - P(Bin <= ceil(5r/8) - 1)
    const auto upper_from =
        static_cast<long>(std::ceil(5.0 * r / 8.0)) - 1;
    const mpq_class upper_tail =
        1 - binom_cdf_exact(half, static_cast<double>(upper_from));
    BigFloat rhs(128);
    mpfr_set_ui(rhs.get(), r, MPFR_RNDD);
    mpfr_div_ui(rhs.get(), rhs.get(), 32, MPFR_RNDD);
    mpfr_neg(rhs.get(), rhs.get(), MPFR_RNDU);
    mpfr_exp(rhs.get(), rhs.get(), MPFR_RNDD);
    w.pass = upper_tail == w.lhs_exact &&
             mpfr_cmp_q(rhs.get(), w.lhs_exact.get_mpq_t()) >= 0;
    w.lhs = q_up(w.lhs_exact);
    w.rhs = mpfr_get_d(rhs.get(), MPFR_RNDD);
    out.push_back(std::move(w));
  }
  {
    LemmaWitness w;
    w.check = "large_primes_product";
    w.params = params;
    // 2^{1 - 3r/16}; the exponent is exact in binary.
    BigFloat tail(128), expo(128);
    mpfr_set_si(expo.get(), 16 - 3 * static_cast<long>(r), MPFR_RNDN);
    mpfr_div_ui(expo.get(), expo.get(), 16, MPFR_RNDN);
    mpfr_ui_pow(tail.get(), 2, expo.get(), MPFR_RNDD);
    const double tail_d = mpfr_get_d(tail.get(), MPFR_RNDD);
    // The enclosure must be narrow next to the tail it is compared with.
    const double width = std::min(eps, tail_d / 4);
    if (width < detail::kMinEps)
      throw InvalidArgument("large-r product check needs r <= 256");
    const ProbInterval prod =
        prime_product_cdf(r, three_eighths, width, {.first_prime = 64});
    mpfr_ui_sub(tail.get(), 1, tail.get(), MPFR_RNDU);
    w.rhs = mpfr_get_d(tail.get(), MPFR_RNDU);
    w.lhs = prod.lo;
    // 1 - prod.lo is exact in double arithmetic.
    w.pass = 1.0 - prod.lo <= tail_d;
    out.push_back(std::move(w));
  }
  {
    LemmaWitness w;
    w.check = "small_primes_product";
    w.params = params;
    mpq_class prod = 1;
    unsigned count = 0;
    for (unsigned p = 3; p < 64; p += 2) {
      bool prime = true;
      for (unsigned d = 3; d * d <= p; d += 2)
        prime = prime && p % d != 0;
      if (!prime)
        continue;
      prod *= binom_cdf_exact(BinomialSpec(r, mpq_class(1, p)), three_eighths);
      ++count;
    }
    BigFloat tail(128);
    exp_neg_down(tail, r, 300);
    mpfr_mul_ui(tail.get(), tail.get(), count, MPFR_RNDD);
    w.lhs_exact = prod;
    finish_tail_check(w, tail);
    w.pass = w.pass && count == 17;
    out.push_back(std::move(w));
  }
  return out;
}

GapProfile gap_profile(std::uint32_t r, double eps) {
  check_r(r);
  GapProfile prof{r, -1.0, 0, eps};
  for (std::uint32_t t = 0; t <= r; ++t) {
    const double hi = gap(r, t, eps).hi;
    if (hi > prof.sup_gap) {
      prof.sup_gap = hi;
      prof.argmax_t = t;
    }
  }
  return prof;
}

Theorem1Report theorem1_profile(const std::vector<std::uint32_t> &r_values,
                                double eps) {
  if (r_values.empty())
    throw InvalidArgument("theorem1_profile needs at least one r");
  Theorem1Report rep;
  for (auto r : r_values)
    rep.profiles.push_back(gap_profile(r, eps));

  const auto n = static_cast<double>(rep.profiles.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto &p : rep.profiles) {
    const double x = p.r, y = std::log(p.sup_gap);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  rep.slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
  const double intercept = (sy - rep.slope * sx) / n;
  rep.fitted_A = std::exp(intercept);
  rep.fitted_B = -rep.slope;
  for (const auto &p : rep.profiles)
    rep.residuals.push_back(std::log(p.sup_gap) - (intercept + rep.slope * p.r));

  const auto [lo, hi] = std::minmax_element(
      rep.profiles.begin(), rep.profiles.end(),
      [](const GapProfile &a, const GapProfile &b) { return a.r < b.r; });
  rep.decays = hi->sup_gap < lo->sup_gap;
  return rep;
}

} // namespace codiv
