#include <doctest.h>

#include <cmath>
#include <functional>

#include <mpfr.h>

#include "codiv/errors.hpp"
#include "codiv/exactdist.hpp"
#include "codiv/limitdist.hpp"
#include "codiv/primes.hpp"

using namespace codiv;

namespace {

using Q = mpq_class;
constexpr double kEps = 1e-9;

// Enclosure of a constant evaluated with MPFR at 200 bits, [x - 1e-40, x + 1e-40]
// is far narrower than anything compared against it.
double mpfr_value(const std::function<void(mpfr_t)> &f) {
  mpfr_t x;
  mpfr_init2(x, 200);
  f(x);
  const double d = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return d;
}

double inv_zeta(unsigned s) {
  return mpfr_value([s](mpfr_t x) {
    mpfr_zeta_ui(x, s, MPFR_RNDN);
    mpfr_ui_div(x, 1, x, MPFR_RNDN);
  });
}

double pi_power_ratio(unsigned num, unsigned power) {
  return mpfr_value([=](mpfr_t x) {
    mpfr_const_pi(x, MPFR_RNDN);
    mpfr_pow_ui(x, x, power, MPFR_RNDN);
    mpfr_ui_div(x, num, x, MPFR_RNDN);
  });
}

// Loose containment allowing for the 0.5 ulp of the reference double.
bool encloses(const ProbInterval &p, double x) {
  return p.lo <= x + 1e-16 && x - 1e-16 <= p.hi;
}

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// prod_{p <= bound} P(Bin(r, 1/p) <= t) as an exact rational, by a product
// tree over the numerators and denominators.
Q truncated_product(std::uint32_t r, std::uint32_t t, std::uint64_t bound) {
  const PrimeTable primes(bound);
  std::vector<mpz_class> num, den;
  for (std::uint32_t p : primes.primes()) {
    mpz_class a = 0;
    for (std::uint32_t j = 0; j <= t; ++j) {
      mpz_class pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), p - 1, r - j);
      a += binom(r, j) * pw;
    }
    mpz_class b;
    mpz_ui_pow_ui(b.get_mpz_t(), p, r);
    num.push_back(a);
    den.push_back(b);
  }
  auto reduce = [](std::vector<mpz_class> v) {
    while (v.size() > 1) {
      std::vector<mpz_class> next;
      for (std::size_t i = 0; i + 1 < v.size(); i += 2)
        next.push_back(v[i] * v[i + 1]);
      if (v.size() % 2)
        next.push_back(v.back());
      v.swap(next);
    }
    return v.front();
  };
  Q out(reduce(num), reduce(den));
  out.canonicalize();
  return out;
}

} // namespace

TEST_SUITE("limitdist") {

TEST_CASE("exact binomial CDF examples") {
  CHECK(binom_cdf_exact(BinomialSpec(2, Q(1, 2)), 1) == Q(3, 4));
  CHECK(binom_cdf_exact(BinomialSpec(3, Q(1, 3)), 1) == Q(20, 27));
  CHECK(binom_cdf_exact(BinomialSpec(3, Q(1, 3)), 1.9) == Q(20, 27));
  CHECK(binom_cdf_exact(BinomialSpec(3, Q(1, 3)), -0.5) == 0);
  CHECK(binom_cdf_exact(BinomialSpec(3, Q(1, 3)), 3) == 1);
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (unsigned r = 1; r <= 6; ++r) {
      Q pr(1);
      for (unsigned i = 0; i < r; ++i)
        pr /= p;
      CHECK(binom_cdf_exact(BinomialSpec(r, Q(1, p)), r - 1) == 1 - pr);
    }
}

TEST_CASE("exact binomial agrees with the term-by-term sum") {
  for (unsigned N : {1u, 5u, 17u, 40u})
    for (const Q &q : {Q(1, 2), Q(1, 3), Q(2, 7), Q(1, 1009)}) {
      Q cdf = 0, total = 0;
      for (unsigned k = 0; k <= N; ++k) {
        Q qk = 1, rk = 1;
        for (unsigned i = 0; i < k; ++i)
          qk *= q;
        for (unsigned i = k; i < N; ++i)
          rk *= 1 - q;
        const Q term = Q(binom(N, k)) * qk * rk;
        cdf += term;
        CHECK(binom_pmf_exact(BinomialSpec(N, q), k) == term);
        CHECK(binom_cdf_exact(BinomialSpec(N, q), k) == cdf);
        total += binom_pmf_exact(BinomialSpec(N, q), k);
      }
      CHECK(total == 1);
    }
}

TEST_CASE("binomial spec validation") {
  CHECK_THROWS_AS(BinomialSpec(0, Q(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(BinomialSpec(3, Q(0)), InvalidArgument);
  CHECK_THROWS_AS(BinomialSpec(3, Q(3, 2)), InvalidArgument);
  CHECK_NOTHROW(BinomialSpec(3, Q(1)));
}

TEST_CASE("limit CDF at the coprimality constants") {
  const auto f21 = limit_cdf(2, 1, kEps);
  CHECK(f21.width() <= kEps);
  CHECK(encloses(f21, pi_power_ratio(6, 2)));
  const auto f32 = limit_cdf(3, 2, kEps);
  CHECK(f32.width() <= kEps);
  CHECK(encloses(f32, inv_zeta(3)));
  for (unsigned r = 2; r <= 12; ++r) {
    CAPTURE(r);
    CHECK(encloses(limit_cdf(r, r - 1, kEps), inv_zeta(r)));
  }
}

TEST_CASE("limit CDF trivial ranges") {
  for (double t : {-1.0, 0.0, 0.5, 0.999}) {
    const auto f = limit_cdf(5, t, kEps);
    CHECK(f.lo == 0.0);
    CHECK(f.hi == 0.0);
  }
  for (double t : {5.0, 5.5, 100.0}) {
    const auto f = limit_cdf(5, t, kEps);
    CHECK(f.lo == 1.0);
    CHECK(f.hi == 1.0);
  }
}

TEST_CASE("limit CDF depends on t only through its floor") {
  for (std::uint32_t r = 2; r <= 7; ++r)
    for (std::uint32_t t = 1; t < r; ++t) {
      const auto a = limit_cdf(r, t, kEps);
      const auto b = limit_cdf(r, t + 0.5, kEps);
      CHECK(a.lo == b.lo);
      CHECK(a.hi == b.hi);
    }
}

TEST_CASE("limit CDF is nondecreasing in t") {
  for (std::uint32_t r = 2; r <= 16; ++r) {
    ProbInterval prev{0, 0, kEps};
    for (double t = 0; t <= r; t += 0.5) {
      const auto f = limit_cdf(r, t, kEps);
      CHECK(f.lo <= f.hi);
      CHECK(prev.hi <= f.hi + f.width());
      prev = f;
    }
  }
}

TEST_CASE("enclosure against an exact truncated product") {
  // F <= prod_{p <= P} and the missing factors cost at most
  // sum_{m > P} C(r, t+1) m^{-(t+1)} <= C(r, t+1) P^{-t} / t.
  const std::uint64_t P = 100000;
  for (std::uint32_t r = 2; r <= 6; ++r)
    for (std::uint32_t t = 1; t < r; ++t) {
      CAPTURE(r);
      CAPTURE(t);
      const Q oracle = truncated_product(r, t, P);
      const double o_lo = oracle.get_d();
      const double o_hi = std::nextafter(o_lo, 2.0);
      const double tail = binom(r, t + 1).get_d() * std::pow(double(P), -double(t)) / t;
      const auto f = limit_cdf(r, t, kEps);
      CHECK(f.lo <= o_hi);
      CHECK(o_lo <= f.hi + tail);
    }
}

TEST_CASE("zeta and mutual coprimality") {
  const auto z2 = zeta_enclosure(2, kEps);
  CHECK(z2.width() <= kEps);
  const double pi2_6 = mpfr_value([](mpfr_t x) {
    mpfr_const_pi(x, MPFR_RNDN);
    mpfr_sqr(x, x, MPFR_RNDN);
    mpfr_div_ui(x, x, 6, MPFR_RNDN);
  });
  CHECK(z2.lo <= pi2_6 + 1e-15);
  CHECK(pi2_6 - 1e-15 <= z2.hi);

  CHECK(encloses(mutual_coprimality_limit(2, kEps), pi_power_ratio(6, 2)));
  CHECK(encloses(mutual_coprimality_limit(4, kEps), pi_power_ratio(90, 4)));
  for (unsigned r = 8; r <= 20; ++r)
    CHECK(mutual_coprimality_limit(r, kEps).lo >= 1 - std::ldexp(1.0, 1 - int(r)) - kEps);
}

TEST_CASE("pairwise coprimality") {
  CHECK(encloses(pairwise_coprimality_limit(2, kEps), pi_power_ratio(6, 2)));
  const auto t3 = pairwise_coprimality_limit(3, kEps);
  CHECK(t3.lo <= 0.2867474285);
  CHECK(t3.hi >= 0.2867474284);
  ProbInterval prev = pairwise_coprimality_limit(2, kEps);
  for (std::uint32_t r = 3; r <= 12; ++r) {
    const auto cur = pairwise_coprimality_limit(r, kEps);
    CHECK(cur.hi < prev.lo);
    prev = cur;
  }
}

TEST_CASE("k-wise limits reduce to pairwise and mutual") {
  for (std::uint32_t r = 2; r <= 8; ++r) {
    CAPTURE(r);
    CHECK(kwise_coprimality_limit(r, 2, kEps).overlaps(pairwise_coprimality_limit(r, kEps)));
    CHECK(kwise_coprimality_limit(r, r, kEps).overlaps(mutual_coprimality_limit(r, kEps)));
  }
  CHECK_THROWS_AS(kwise_coprimality_limit(4, 1), InvalidArgument);
  CHECK_THROWS_AS(kwise_coprimality_limit(4, 5), InvalidArgument);
}

TEST_CASE("limit PMF") {
  const auto m2 = limit_pmf(2, kEps);
  REQUIRE(m2.size() == 3);
  CHECK(m2[0].lo == 0.0);
  CHECK(m2[0].hi == 0.0);
  CHECK(encloses(m2[1], pi_power_ratio(6, 2)));
  CHECK(encloses(m2[2], 1 - pi_power_ratio(6, 2)));

  for (std::uint32_t r = 2; r <= 10; ++r) {
    const auto m = limit_pmf(r, kEps);
    double mid = 0, width = 0;
    for (const auto &p : m) {
      mid += p.midpoint();
      width += p.width();
      CHECK(p.lo >= 0.0);
    }
    CHECK(std::abs(mid - 1) <= width + 1e-15);
  }
  const auto m3 = limit_pmf(3, kEps);
  CHECK(encloses(m3[3], 1 - inv_zeta(3)));
  CHECK(m3[3].midpoint() == doctest::Approx(0.168093).epsilon(1e-5));
}

TEST_CASE("prime products with exponent and starting prime") {
  const double six_pi2 = pi_power_ratio(6, 2);
  CHECK(encloses(prime_product_cdf(1, 0, kEps, {.first_prime = 2, .s = 2}), six_pi2));
  CHECK(encloses(prime_product_cdf(1, 0, kEps, {.first_prime = 3, .s = 2}),
                 pi_power_ratio(8, 2)));
  const auto odd = prime_product_cdf(2, 1, kEps, {.first_prime = 3});
  const auto all = limit_cdf(2, 1, kEps);
  CHECK(all.lo <= odd.hi * 0.75);
  CHECK(odd.lo * 0.75 <= all.hi);
}

TEST_CASE("finite-n law approaches the pairwise limit for r = 2") {
  const auto t2 = pairwise_coprimality_limit(2, kEps);
  double prev = 1.0;
  for (std::uint64_t n : {10u, 100u, 1000u}) {
    const auto pmf = exact_pmf_bruteforce(n, 2);
    const double dist = std::abs(exact_cdf(pmf, 1).get_d() - t2.midpoint());
    CHECK(dist < prev);
    prev = dist;
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(limit_cdf(1, 0, kEps), InvalidArgument);
  CHECK_THROWS_AS(limit_cdf(3, 1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(limit_cdf(3, 1, 1e-16), PrecisionLimit);
  CHECK_THROWS_AS(zeta_enclosure(1, kEps), InvalidArgument);
}

}
