#pragma once

// Certified evaluation of products  prod_{p >= first_prime} f(p^{-s})  over
// primes, where f is an integer polynomial with f(0) = 1.
//
// Primes p <= P are multiplied in exactly-then-rounded (directed rounding).
// For p > P the logarithm of the product is expanded in powers of x = p^{-s}:
//     -log f(x) = sum_{j>=m} a_j x^j,
// the a_j are computed exactly, the prime power sums sum_{p>P} p^{-sj} come
// from the prime zeta function P(j) = sum_k mu(k)/k log zeta(kj), and the
// series remainder past order J is bounded by Cauchy's estimate on the disk
// |x| <= rho where |1 - f| <= 1/2.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "codiv/prob_interval.hpp"

namespace codiv::detail {

struct EulerProductSpec {
  /// Coefficients of f in increasing degree; factor[0] must be 1.
  std::vector<mpz_class> factor;
  /// Factor at prime p is f(p^{-s}).
  unsigned s = 1;
  /// Product runs over primes >= first_prime.
  std::uint64_t first_prime = 2;
};

struct EulerProductResult {
  ProbInterval value;
  /// Largest prime multiplied in exactly.
  std::uint64_t cutoff = 0;
  /// Truncation order of the tail expansion.
  unsigned order = 0;
};

/// Enclosure of the product of width <= eps. Throws PrecisionLimit when the
/// width cannot be reached, InvalidArgument for eps <= 0 or a divergent
/// product (1 - f vanishing only to first order at s = 1).
EulerProductResult euler_product(const EulerProductSpec &spec, double eps);

/// Smallest eps the double-valued enclosure endpoints can honour.
inline constexpr double kMinEps = 1e-15;

/// Default and largest prime cutoff for the exact head product.
inline constexpr std::uint64_t kInitialCutoff = 4096;
inline constexpr std::uint64_t kMaxCutoff = std::uint64_t{1} << 22;

/// Polynomial of P(Bin(trials, x) <= k) in x, integer coefficients.
std::vector<mpz_class> binomial_cdf_polynomial(unsigned trials, unsigned k);

} // namespace codiv::detail
