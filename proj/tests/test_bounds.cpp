#include <doctest.h>

#include <cmath>

#include "codiv/bounds.hpp"
#include "codiv/errors.hpp"

using namespace codiv;

namespace {

using Q = mpq_class;
constexpr double kEps = 1e-9;
constexpr double kSixOverPiSq = 0.60792710185402662866;

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("gap examples") {
  const auto g = gap(2, 1, kEps);
  CHECK(g.lo <= 0.75 - kSixOverPiSq);
  CHECK(0.75 - kSixOverPiSq <= g.hi);
  CHECK(g.width() <= 2 * kEps);

  const auto g2 = gap(2, 2, kEps);
  CHECK(g2.lo == 0.0);
  CHECK(g2.hi == 0.0);

  const auto gh = gap(2, 0.5, kEps);
  CHECK(gh.lo == 0.25);
  CHECK(gh.hi == 0.25);
}

TEST_CASE("gap upper bound from the odd-prime product") {
  CHECK(gap_upper_bound_identity(2, 1, kEps).hi >= gap(2, 1, kEps).lo);
  CHECK(gap_upper_bound_identity(3, 1, kEps).hi >= gap(3, 1, kEps).lo);
  for (std::uint32_t r = 2; r <= 6; ++r) {
    const auto z = gap_upper_bound_identity(r, r, kEps);
    CHECK(z.lo == 0.0);
    CHECK(z.hi == 0.0);
  }
}

TEST_CASE("gap equals the factored identity") {
  for (std::uint32_t r = 2; r <= 8; ++r)
    for (std::uint32_t t = 0; t <= r; ++t) {
      CAPTURE(r);
      CAPTURE(t);
      const auto direct = gap(r, t, kEps);
      const auto factored = gap_via_identity(r, t, kEps);
      CHECK(direct.lo <= factored.hi);
      CHECK(factored.lo <= direct.hi);
    }
}

TEST_CASE("gap is nonnegative") {
  for (std::uint32_t r = 2; r <= 32; ++r)
    for (std::uint32_t t = 0; t <= r; ++t)
      CHECK(gap(r, t, kEps).lo >= -kEps);
}

TEST_CASE("Hoeffding lemma witnesses") {
  auto w = verify_hoeffding_lemma(2, Q(1, 3));
  CHECK(w.pass);
  CHECK(w.lhs_exact == Q(4, 9));
  CHECK(w.rhs == doctest::Approx(1 - std::exp(-2.0 / 300)).epsilon(1e-12));
  CHECK(w.check == "hoeffding");
  CHECK(w.params == "N=2;q=1/3");
  CHECK(verify_hoeffding_lemma(300, Q(1, 3)).pass);
  CHECK_THROWS_AS(verify_hoeffding_lemma(2, Q(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(verify_hoeffding_lemma(1, Q(1, 3)), InvalidArgument);
}

TEST_CASE("Bennett lemma witnesses") {
  auto w = verify_bennett_lemma(16, Q(1, 64));
  CHECK(w.pass);
  CHECK(w.rhs == doctest::Approx(1 - std::ldexp(1.0, -18)).epsilon(1e-15));
  w = verify_bennett_lemma(2, Q(1, 100));
  CHECK(w.pass);
  CHECK(w.lhs_exact == Q(9801, 10000));
  CHECK(w.rhs == doctest::Approx(1 - std::pow(0.01, 0.375)).epsilon(1e-12));
  CHECK_THROWS_AS(verify_bennett_lemma(2, Q(1, 32)), InvalidArgument);
}

TEST_CASE("lemma checks keep their margin below working precision") {
  // Here 1 - q^{3N/16} is within 1e-150 of 1.
  CHECK(verify_bennett_lemma(400, Q(1, 1009)).pass);
  CHECK(verify_bennett_lemma(400, Q(1, 64)).pass);
  CHECK(verify_hoeffding_lemma(400, Q(1, 100)).pass);
}

TEST_CASE("zeta bound") {
  for (unsigned s : {3u, 4u, 6u, 8u, 12u}) {
    const auto w = verify_zeta_bound(s);
    CHECK(w.pass);
    CHECK(w.lhs <= w.rhs);
  }
  CHECK_THROWS_AS(verify_zeta_bound(2), InvalidArgument);
}

TEST_CASE("large-r estimates") {
  for (std::uint32_t r : {16u, 17u, 40u, 64u, 128u}) {
    const auto ws = verify_large_r_estimates(r, kEps);
    REQUIRE(ws.size() == 3);
    for (const auto &w : ws) {
      CAPTURE(w.check);
      CAPTURE(r);
      CHECK(w.pass);
    }
  }
  CHECK_THROWS_AS(verify_large_r_estimates(8, kEps), InvalidArgument);
}

TEST_CASE("sup gap profile") {
  const auto p2 = gap_profile(2, kEps);
  CHECK(p2.sup_gap == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(p2.argmax_t == 0);
  CHECK(gap_profile(16, kEps).sup_gap < p2.sup_gap);

  const auto rep = theorem1_profile({2, 4, 8, 16, 32}, kEps);
  CHECK(rep.decays);
  CHECK(rep.slope < 0);
  CHECK(rep.fitted_B == doctest::Approx(-rep.slope));
  CHECK(rep.residuals.size() == 5);
  for (std::size_t i = 1; i < rep.profiles.size(); ++i)
    CHECK(rep.profiles[i].sup_gap < rep.profiles[i - 1].sup_gap);
  CHECK_THROWS_AS(theorem1_profile({}, kEps), InvalidArgument);
  CHECK_THROWS_AS(gap(1, 0, kEps), InvalidArgument);
}

}
