#include "euler_product.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "big_interval.hpp"
#include "codiv/errors.hpp"
#include "codiv/primes.hpp"

namespace codiv::detail {

namespace {

const PrimeTable &head_primes() {
  static const PrimeTable table(kMaxCutoff);
  return table;
}

int mobius_small(unsigned k) {
  int mu = 1;
  for (unsigned p = 2; p * p <= k; ++p) {
    if (k % p != 0)
      continue;
    k /= p;
    if (k % p == 0)
      return 0;
    mu = -mu;
  }
  return k > 1 ? -mu : mu;
}

mpfr_prec_t round_prec(double bits) {
  const auto words = static_cast<mpfr_prec_t>(std::ceil(bits / 64.0));
  return std::max<mpfr_prec_t>(128, 64 * words);
}

// Prime zeta P(j) = sum_p p^{-j}, j >= 2, via sum_k mu(k)/k log zeta(kj).
BigInterval prime_zeta(unsigned j, mpfr_prec_t prec) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, mpfr_prec_t>, BigInterval> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({j, prec}); it != cache.end())
      return it->second;
  }

  // |sum_{k>K} mu(k)/k log zeta(kj)| <= sum_{k>K} 3 * 2^{-kj} <= 6 * 2^{-(K+1)j}
  const unsigned terms =
      static_cast<unsigned>((prec + 16 + j - 1) / j); // (K+1) j >= prec + 16
  BigInterval sum = BigInterval::point(0, prec);
  BigInterval term(prec);
  for (unsigned k = 1; k <= terms; ++k) {
    const int m = mobius_small(k);
    if (m == 0)
      continue;
    mpfr_zeta_ui(term.lo().get(), static_cast<unsigned long>(k) * j, MPFR_RNDD);
    mpfr_zeta_ui(term.hi().get(), static_cast<unsigned long>(k) * j, MPFR_RNDU);
    mpfr_log(term.lo().get(), term.lo().get(), MPFR_RNDD);
    mpfr_log(term.hi().get(), term.hi().get(), MPFR_RNDU);
    term.mul_q(mpq_class(m, static_cast<long>(k)));
    sum += term;
  }
  BigFloat err(prec);
  mpfr_set_ui_2exp(err.get(), 6, -static_cast<long>((terms + 1) * j), MPFR_RNDU);
  sum += BigInterval::symmetric(err);

  std::lock_guard lock(mu);
  cache.emplace(std::make_pair(j, prec), sum);
  return sum;
}

// sum_{p <= cutoff} p^{-j}.
BigInterval head_power_sum(std::uint64_t cutoff, unsigned j, mpfr_prec_t prec) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, unsigned, mpfr_prec_t>, BigInterval>
      cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({cutoff, j, prec}); it != cache.end())
      return it->second;
  }
  BigInterval sum = BigInterval::point(0, prec);
  BigFloat t(prec);
  for (std::uint32_t p : head_primes().primes()) {
    if (p > cutoff)
      break;
    mpfr_set_ui(t.get(), p, MPFR_RNDN);
    mpfr_pow_si(t.get(), t.get(), -static_cast<long>(j), MPFR_RNDD);
    mpfr_add(sum.lo().get(), sum.lo().get(), t.get(), MPFR_RNDD);
    mpfr_set_ui(t.get(), p, MPFR_RNDN);
    mpfr_pow_si(t.get(), t.get(), -static_cast<long>(j), MPFR_RNDU);
    mpfr_add(sum.hi().get(), sum.hi().get(), t.get(), MPFR_RNDU);
  }
  std::lock_guard lock(mu);
  cache.emplace(std::make_tuple(cutoff, j, prec), sum);
  return sum;
}

// sum_{p > cutoff} p^{-j}, j >= 2, intersected with the integral bound
// [0, cutoff^{1-j} / (j - 1)].
BigInterval tail_power_sum(std::uint64_t cutoff, unsigned j, mpfr_prec_t prec) {
  BigInterval s = prime_zeta(j, prec) - head_power_sum(cutoff, j, prec);
  BigFloat zero(prec);
  s.clamp_below(zero);
  BigFloat crude(prec);
  mpfr_set_ui(crude.get(), cutoff, MPFR_RNDN);
  mpfr_pow_si(crude.get(), crude.get(), 1 - static_cast<long>(j), MPFR_RNDU);
  mpfr_div_ui(crude.get(), crude.get(), j - 1, MPFR_RNDU);
  s.clamp_above(crude);
  return s;
}

// Coefficients of -log(1 - g) up to degree `order`; g has valuation >= 1.
std::vector<mpq_class> neg_log_series(const std::vector<mpz_class> &g,
                                      unsigned valuation, unsigned order) {
  std::vector<mpq_class> out(order + 1, 0);
  std::vector<mpz_class> power(order + 1, 0);
  for (std::size_t i = 0; i < g.size() && i <= order; ++i)
    power[i] = g[i];
  for (unsigned k = 1; static_cast<unsigned long>(k) * valuation <= order; ++k) {
    for (unsigned i = 0; i <= order; ++i)
      if (power[i] != 0) {
        mpq_class term(power[i], k);
        term.canonicalize();
        out[i] += term;
      }
    std::vector<mpz_class> next(order + 1, 0);
    for (unsigned i = 0; i <= order; ++i) {
      if (power[i] == 0)
        continue;
      for (std::size_t l = valuation; l < g.size() && i + l <= order; ++l)
        next[i + l] += power[i] * g[l];
    }
    power.swap(next);
  }
  for (auto &c : out)
    c.canonicalize();
  return out;
}

struct TailPlan {
  unsigned order = 0;      // J
  long c_log2 = 0;         // rho = 2^{c_log2} * cutoff^{-s}
  BigFloat remainder{128}; // bound on |sum_p R(p^{-s})|
};

// Choose rho = c * P^{-s} with G = sum |g_i| rho^i <= 1/2, then the smallest
// J with remainder H c/(c-1) * P / (c^{J+1} (s(J+1) - 1)) <= target.
bool plan_tail(const std::vector<mpz_class> &g, unsigned valuation, unsigned s,
               std::uint64_t cutoff, double target, TailPlan &plan) {
  const mpfr_prec_t prec = 128;
  BigFloat rho(prec), acc(prec), term(prec), half(prec);
  mpfr_set_d(half.get(), 0.5, MPFR_RNDN);
  long chosen = -1;
  for (long cl = 20; cl >= 1; --cl) {
    mpfr_set_ui(rho.get(), cutoff, MPFR_RNDN);
    mpfr_pow_si(rho.get(), rho.get(), -static_cast<long>(s), MPFR_RNDU);
    mpfr_mul_2si(rho.get(), rho.get(), cl, MPFR_RNDU);
    mpfr_set_zero(acc.get(), 1);
    for (std::size_t i = valuation; i < g.size(); ++i) {
      if (g[i] == 0)
        continue;
      mpfr_pow_ui(term.get(), rho.get(), i, MPFR_RNDU);
      mpz_class a = abs(g[i]);
      mpfr_mul_z(term.get(), term.get(), a.get_mpz_t(), MPFR_RNDU);
      mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDU);
    }
    if (mpfr_lessequal_p(acc.get(), half.get())) {
      chosen = cl;
      break;
    }
  }
  if (chosen < 0)
    return false;

  // H = -log(1 - G), rounded up.
  BigFloat h(prec);
  mpfr_ui_sub(h.get(), 1, acc.get(), MPFR_RNDD);
  mpfr_log(h.get(), h.get(), MPFR_RNDD);
  mpfr_neg(h.get(), h.get(), MPFR_RNDU);

  const double c = std::ldexp(1.0, static_cast<int>(chosen));
  const double log_base = std::log(mpfr_get_d(h.get(), MPFR_RNDU)) +
                          std::log(c / (c - 1.0)) +
                          std::log(static_cast<double>(cutoff));
  unsigned order = valuation - 1;
  constexpr unsigned kMaxOrder = 2000;
  while (order <= kMaxOrder) {
    const double jp1 = order + 1.0;
    const double log_rb = log_base - jp1 * std::log(c) - std::log(s * jp1 - 1.0);
    if (log_rb <= std::log(target))
      break;
    ++order;
  }
  if (order > kMaxOrder)
    return false;

  BigFloat rb(prec), denom(prec);
  mpfr_set_ui(denom.get(), 2, MPFR_RNDN);
  mpfr_pow_ui(denom.get(), denom.get(),
              static_cast<unsigned long>(chosen) * (order + 1), MPFR_RNDD);
  mpfr_mul_ui(denom.get(), denom.get(), s * (order + 1) - 1, MPFR_RNDD);
  mpfr_mul_ui(denom.get(), denom.get(), (1UL << chosen) - 1, MPFR_RNDD);
  mpfr_mul_ui(rb.get(), h.get(), 1UL << chosen, MPFR_RNDU);
  mpfr_mul_ui(rb.get(), rb.get(), cutoff, MPFR_RNDU);
  mpfr_div(rb.get(), rb.get(), denom.get(), MPFR_RNDU);

  plan.order = order;
  plan.c_log2 = chosen;
  plan.remainder = rb;
  return true;
}

// f(p^{-s}) = (sum_i f_i b^{deg-i}) / b^deg with b = p^s, rounded outward.
BigInterval factor_at(const std::vector<mpz_class> &f, unsigned s,
                      std::uint32_t p, mpfr_prec_t prec) {
  mpz_class base;
  mpz_ui_pow_ui(base.get_mpz_t(), p, s);
  mpz_class rev = f[0];
  for (std::size_t i = 1; i < f.size(); ++i)
    rev = rev * base + f[i];
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), base.get_mpz_t(), f.size() - 1);
  BigInterval out(prec);
  mpfr_set_z(out.lo().get(), rev.get_mpz_t(), MPFR_RNDD);
  mpfr_div_z(out.lo().get(), out.lo().get(), den.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi().get(), rev.get_mpz_t(), MPFR_RNDU);
  mpfr_div_z(out.hi().get(), out.hi().get(), den.get_mpz_t(), MPFR_RNDU);
  return out;
}

} // namespace

std::vector<mpz_class> binomial_cdf_polynomial(unsigned trials, unsigned k) {
  // sum_{j<=k} C(n,j) x^j (1-x)^{n-j}
  std::vector<mpz_class> poly(trials + 1, 0);
  mpz_class cnj, cml;
  for (unsigned j = 0; j <= std::min(k, trials); ++j) {
    mpz_bin_uiui(cnj.get_mpz_t(), trials, j);
    const unsigned rest = trials - j;
    for (unsigned l = 0; l <= rest; ++l) {
      mpz_bin_uiui(cml.get_mpz_t(), rest, l);
      if (l % 2 == 0)
        poly[j + l] += cnj * cml;
      else
        poly[j + l] -= cnj * cml;
    }
  }
  while (poly.size() > 1 && poly.back() == 0)
    poly.pop_back();
  return poly;
}

EulerProductResult euler_product(const EulerProductSpec &spec, double eps) {
  if (!(eps > 0))
    throw InvalidArgument("enclosure width eps must be positive");
  if (eps < kMinEps)
    throw PrecisionLimit("requested width is below the attainable minimum "
                         "of 1e-15");
  if (spec.factor.empty() || spec.factor[0] != 1)
    throw InvalidArgument("Euler factor must satisfy f(0) = 1");
  if (spec.s == 0)
    throw InvalidArgument("Euler factor exponent s must be positive");

  std::vector<mpz_class> f = spec.factor;
  while (f.size() > 1 && f.back() == 0)
    f.pop_back();
  if (f.size() == 1)
    return {{1.0, 1.0, eps}, 0, 0};

  std::vector<mpz_class> g(f.size());
  for (std::size_t i = 1; i < f.size(); ++i)
    g[i] = -f[i];
  unsigned valuation = 1;
  while (g[valuation] == 0)
    ++valuation;
  if (valuation * spec.s < 2)
    throw InvalidArgument("Euler product diverges: 1 - f(p^{-s}) ~ 1/p");

  const double log2_inv_eps = -std::log2(eps);
  const auto &primes = head_primes().primes();
  std::size_t next_prime = 0;
  while (next_prime < primes.size() && primes[next_prime] < spec.first_prime)
    ++next_prime;

  const mpfr_prec_t head_prec = round_prec(log2_inv_eps + 96);
  BigInterval head = BigInterval::point(1, head_prec);
  for (std::uint64_t cutoff = kInitialCutoff; cutoff <= kMaxCutoff;
       cutoff *= 2) {
    for (; next_prime < primes.size() && primes[next_prime] <= cutoff;
         ++next_prime) {
      head *= factor_at(f, spec.s, primes[next_prime], head_prec);
      if (mpfr_zero_p(head.hi().get()))
        return {{0.0, 0.0, eps}, primes[next_prime], 0};
    }

    TailPlan plan;
    if (!plan_tail(g, valuation, spec.s, cutoff, eps / 16, plan))
      continue;

    const double log2_cutoff = std::log2(static_cast<double>(cutoff));
    const mpfr_prec_t tail_prec =
        round_prec(plan.order * spec.s * log2_cutoff + log2_inv_eps + 64);
    const auto a = neg_log_series(g, valuation, plan.order);

    BigInterval log_tail = BigInterval::point(0, tail_prec);
    for (unsigned j = valuation; j <= plan.order; ++j) {
      if (a[j] == 0)
        continue;
      BigInterval term = tail_power_sum(cutoff, spec.s * j, tail_prec);
      term.mul_q(a[j]);
      log_tail += term;
    }
    BigFloat rb(tail_prec);
    mpfr_set(rb.get(), plan.remainder.get(), MPFR_RNDU);
    log_tail += BigInterval::symmetric(rb);

    BigInterval head_t(tail_prec);
    mpfr_set(head_t.lo().get(), head.lo().get(), MPFR_RNDD);
    mpfr_set(head_t.hi().get(), head.hi().get(), MPFR_RNDU);
    BigInterval value = head_t * exp(neg(log_tail));
    value.clamp(0, 1);

    ProbInterval out{value.lo_down(), value.hi_up(), eps};
    if (out.width() <= eps)
      return {out, cutoff, plan.order};
  }
  throw PrecisionLimit("could not reach enclosure width " +
                       std::to_string(eps) + " with prime cutoff up to " +
                       std::to_string(kMaxCutoff));
}

} // namespace codiv::detail
