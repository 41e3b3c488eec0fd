#include "codiv/limitdist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "big_interval.hpp"
#include "codiv/errors.hpp"
#include "euler_product.hpp"
#include "limitdist_internal.hpp"

namespace codiv {

BinomialSpec::BinomialSpec(std::uint64_t trials, mpq_class success_prob)
    : trials_(trials), q_(std::move(success_prob)) {
  q_.canonicalize();
  if (trials_ < 1)
    throw InvalidArgument("binomial needs at least one trial");
  if (q_ <= 0 || q_ > 1)
    throw InvalidArgument("binomial success probability must lie in (0, 1], got " +
                          q_.get_str());
}

mpq_class binom_pmf_exact(const BinomialSpec &spec, std::uint64_t k) {
  const auto n = spec.trials();
  if (k > n)
    return 0;
  const mpz_class &a = spec.success_prob().get_num();
  const mpz_class &b = spec.success_prob().get_den();
  const mpz_class fail = b - a;
  mpz_class c, ak, fk, den;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  mpz_pow_ui(ak.get_mpz_t(), a.get_mpz_t(), k);
  mpz_pow_ui(fk.get_mpz_t(), fail.get_mpz_t(), n - k);
  mpz_pow_ui(den.get_mpz_t(), b.get_mpz_t(), n);
  mpq_class out(c * ak * fk, den);
  out.canonicalize();
  return out;
}

mpq_class binom_cdf_exact(const BinomialSpec &spec, double t) {
  if (std::isnan(t))
    throw InvalidArgument("binomial CDF argument is NaN");
  if (t < 0)
    return 0;
  const auto n = spec.trials();
  if (t >= static_cast<double>(n))
    return 1;
  const auto k = static_cast<std::uint64_t>(std::floor(t));

  // sum_{j<=k} C(n,j) a^j (b-a)^{n-j} / b^n, accumulated as integers.
  const mpz_class &a = spec.success_prob().get_num();
  const mpz_class &b = spec.success_prob().get_den();
  const mpz_class fail = b - a;
  mpz_class num = 0, c, ak = 1, fk, den;
  for (std::uint64_t j = 0; j <= k; ++j) {
    mpz_bin_uiui(c.get_mpz_t(), n, j);
    mpz_pow_ui(fk.get_mpz_t(), fail.get_mpz_t(), n - j);
    num += c * ak * fk;
    ak *= a;
  }
  mpz_pow_ui(den.get_mpz_t(), b.get_mpz_t(), n);
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

ProbInterval prime_product_cdf(std::uint32_t r, double t, double eps,
                               const PrimeProductOptions &opts) {
  if (r < 1)
    throw InvalidArgument("prime product needs r >= 1");
  if (std::isnan(t))
    throw InvalidArgument("CDF argument is NaN");
  if (!(eps > 0))
    throw InvalidArgument("enclosure width eps must be positive");
  if (t >= static_cast<double>(r))
    return {1.0, 1.0, eps};
  if (t < 0)
    return {0.0, 0.0, eps};
  // prod_p (1 - 1/p)^r diverges to 0.
  if (opts.s == 1 && t < 1)
    return {0.0, 0.0, eps};
  detail::EulerProductSpec spec;
  spec.factor =
      detail::binomial_cdf_polynomial(r, static_cast<unsigned>(std::floor(t)));
  spec.s = opts.s;
  spec.first_prime = opts.first_prime;
  return detail::euler_product(spec, eps).value;
}

ProbInterval limit_cdf(std::uint32_t r, double t, double eps) {
  if (r < 2)
    throw InvalidArgument("limit_cdf needs r >= 2, got r=" + std::to_string(r));
  return prime_product_cdf(r, t, eps);
}

namespace detail {

BigInterval zeta_series(unsigned s, double eps) {
  if (s < 2)
    throw InvalidArgument("zeta series needs s >= 2");
  if (!(eps > 0))
    throw InvalidArgument("enclosure width eps must be positive");
  if (eps < kMinEps)
    throw PrecisionLimit("eps below attainable enclosure width");
  const mpfr_prec_t prec = 128;
  // Width of the tail bracket is below N^{-s}; start there and double.
  auto terms = static_cast<std::uint64_t>(
      std::ceil(std::pow(2.0 / eps, 1.0 / static_cast<double>(s))));
  terms = std::max<std::uint64_t>(terms, 16);
  while (true) {
    BigInterval sum = BigInterval::point(0, prec);
    BigFloat t(prec);
    // Smallest terms first.
    for (std::uint64_t n = terms; n >= 1; --n) {
      mpfr_set_ui(t.get(), n, MPFR_RNDN);
      mpfr_pow_si(t.get(), t.get(), -static_cast<long>(s), MPFR_RNDD);
      mpfr_add(sum.lo().get(), sum.lo().get(), t.get(), MPFR_RNDD);
      mpfr_set_ui(t.get(), n, MPFR_RNDN);
      mpfr_pow_si(t.get(), t.get(), -static_cast<long>(s), MPFR_RNDU);
      mpfr_add(sum.hi().get(), sum.hi().get(), t.get(), MPFR_RNDU);
    }
    // int_{N+1}^inf x^{-s} <= sum_{n>N} n^{-s} <= int_N^inf x^{-s}
    mpfr_set_ui(t.get(), terms + 1, MPFR_RNDN);
    mpfr_pow_si(t.get(), t.get(), 1 - static_cast<long>(s), MPFR_RNDD);
    mpfr_div_ui(t.get(), t.get(), s - 1, MPFR_RNDD);
    mpfr_add(sum.lo().get(), sum.lo().get(), t.get(), MPFR_RNDD);
    mpfr_set_ui(t.get(), terms, MPFR_RNDN);
    mpfr_pow_si(t.get(), t.get(), 1 - static_cast<long>(s), MPFR_RNDU);
    mpfr_div_ui(t.get(), t.get(), s - 1, MPFR_RNDU);
    mpfr_add(sum.hi().get(), sum.hi().get(), t.get(), MPFR_RNDU);

    if (sum.hi_up() - sum.lo_down() <= eps)
      return sum;
    terms *= 2;
  }
}

} // namespace detail

RealEnclosure zeta_enclosure(unsigned s, double eps) {
  const auto z = detail::zeta_series(s, eps);
  return {z.lo_down(), z.hi_up()};
}

ProbInterval mutual_coprimality_limit(std::uint32_t r, double eps) {
  if (r < 2)
    throw InvalidArgument("mutual coprimality limit needs r >= 2");
  const auto z = detail::zeta_series(r, eps);
  detail::BigInterval inv(z.prec());
  mpfr_ui_div(inv.lo().get(), 1, z.hi().get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi().get(), 1, z.lo().get(), MPFR_RNDU);
  return {inv.lo_down(), inv.hi_up(), eps};
}

ProbInterval pairwise_coprimality_limit(std::uint32_t r, double eps) {
  if (r < 2)
    throw InvalidArgument("pairwise coprimality limit needs r >= 2");
  // (1-x)^r + r x (1-x)^{r-1}
  std::vector<mpz_class> poly(r + 1, 0);
  mpz_class c;
  for (std::uint32_t l = 0; l <= r; ++l) {
    mpz_bin_uiui(c.get_mpz_t(), r, l);
    poly[l] += (l % 2 == 0) ? c : mpz_class(-c);
  }
  for (std::uint32_t l = 0; l + 1 <= r; ++l) {
    mpz_bin_uiui(c.get_mpz_t(), r - 1, l);
    c *= r;
    poly[l + 1] += (l % 2 == 0) ? c : mpz_class(-c);
  }
  detail::EulerProductSpec spec;
  spec.factor = std::move(poly);
  return detail::euler_product(spec, eps).value;
}

ProbInterval kwise_coprimality_limit(std::uint32_t r, std::uint32_t k,
                                     double eps) {
  if (k < 2 || k > r)
    throw InvalidArgument("k-wise coprimality needs 2 <= k <= r, got k=" +
                          std::to_string(k) + ", r=" + std::to_string(r));
  return limit_cdf(r, static_cast<double>(k - 1), eps);
}

std::vector<ProbInterval> limit_pmf(std::uint32_t r, double eps) {
  if (r < 2)
    throw InvalidArgument("limit_pmf needs r >= 2");
  std::vector<ProbInterval> out;
  out.reserve(r + 1);
  ProbInterval prev{0.0, 0.0, eps};
  for (std::uint32_t k = 0; k <= r; ++k) {
    const ProbInterval cur = limit_cdf(r, static_cast<double>(k), eps);
    out.push_back(detail::difference(cur, prev, eps));
    prev = cur;
  }
  return out;
}

} // namespace codiv
