#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "purosc/errors.hpp"
#include "purosc/state.hpp"
#include "support/oracles.hpp"

using namespace purosc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
GaussianState moments(double qq, double pp, double pq) {
  return GaussianState{0.0, 0.0, qq, pp, pq};
}
}  // namespace

TEST_CASE("sigma_det", "[state]") {
  CHECK_THAT(sigma_det(moments(0.5, 0.5, 0.0)), WithinAbs(0.25, 1e-15));
  // varpur moments for mu = 0.6, omega = 1, lambda arbitrary
  CHECK_THAT(sigma_det(moments(0.625, 0.625, -0.375)), WithinAbs(0.25, 1e-15));
  CHECK_THAT(sigma_det(moments(1.0, 1.0, 0.0)), WithinAbs(1.0, 1e-15));
}

TEST_CASE("purity coefficient", "[state]") {
  CHECK_THAT(purity_nu(moments(0.5, 0.5, 0.0)), WithinAbs(1.0, 1e-14));
  CHECK_THAT(purity_nu(moments(1.0, 1.0, 0.0)), WithinAbs(2.0, 1e-14));
  CHECK_THAT(purity_nu(moments(0.55, 0.5, 0.0)),
             WithinAbs(2.0 * std::sqrt(0.275), 1e-12));

  SECTION("clamps round-off undershoot to 1") {
    const GaussianState s = moments(0.5, 0.5 * (1.0 - 1e-10), 0.0);
    CHECK(purity_nu(s) == 1.0);
  }
  SECTION("rejects genuinely unphysical states") {
    CHECK_THROWS_AS(purity_nu(moments(0.3, 0.3, 0.0)), UncertaintyViolation);
  }
  SECTION("agrees with the Wigner-integral purity") {
    const GaussianState s = moments(0.55, 0.5, 0.0);
    const double tr_rho2 = oracles::wigner_purity_quadrature(s);
    CHECK_THAT(1.0 / purity_nu(s), WithinAbs(tr_rho2, 1e-6));
  }
}

TEST_CASE("linear entropy", "[state]") {
  CHECK_THAT(linear_entropy(moments(0.5, 0.5, 0.0)), WithinAbs(0.0, 1e-14));
  CHECK_THAT(linear_entropy(moments(1.0, 1.0, 0.0)), WithinAbs(0.5, 1e-14));
  CHECK_THAT(linear_entropy(moments(0.625, 0.625, -0.375)),
             WithinAbs(0.0, 1e-14));
}

TEST_CASE("von Neumann entropy", "[state]") {
  CHECK(von_neumann_entropy(moments(0.5, 0.5, 0.0)) == 0.0);
  // nu = 3
  CHECK_THAT(von_neumann_entropy(moments(1.5, 1.5, 0.0)),
             WithinAbs(2.0 * std::log(2.0), 1e-12));
  // continuity at the pure boundary
  const double eps = 1e-12;
  CHECK(von_neumann_entropy(moments(0.5 * (1 + eps), 0.5 * (1 + eps), 0.0)) <
        1e-10);

  SECTION("monotone in nu") {
    double prev = -1.0;
    for (double nu = 1.0; nu <= 6.0; nu += 0.25) {
      const double s = von_neumann_entropy(moments(0.5 * nu, 0.5 * nu, 0.0));
      CHECK(s > prev);
      prev = s;
    }
  }
  SECTION("matches thermal-occupancy form (n+1)ln(n+1) - n ln n") {
    const double nu = 3.0;
    const double n = 0.5 * (nu - 1.0);
    const double expected = (n + 1.0) * std::log(n + 1.0) - n * std::log(n);
    CHECK_THAT(von_neumann_entropy(moments(1.5, 1.5, 0.0)),
               WithinAbs(expected, 1e-12));
  }
}

TEST_CASE("correlation coefficient", "[state]") {
  CHECK(correlation_coefficient(moments(0.5, 0.5, 0.0)) == 0.0);
  CHECK_THAT(correlation_coefficient(moments(0.625, 0.625, -0.375)),
             WithinAbs(-0.6, 1e-14));
  CHECK_THAT(correlation_coefficient(moments(0.5, 0.5, 0.25)),
             WithinAbs(0.5, 1e-14));
  CHECK_THROWS_AS(correlation_coefficient(moments(0.0, 0.5, 0.0)),
                  DegenerateState);
}

TEST_CASE("uncertainty classification", "[state]") {
  CHECK(classify_uncertainty(moments(0.5, 0.5, 0.0)) ==
        UncertaintyClass::PureBoundary);
  CHECK(classify_uncertainty(moments(1.0, 0.5, 0.0)) ==
        UncertaintyClass::Mixed);
  CHECK(classify_uncertainty(moments(0.5, 0.25, 0.0)) ==
        UncertaintyClass::Violating);
}

TEST_CASE("wigner function", "[state]") {
  const GaussianState s = moments(0.55, 0.5, 0.1);
  const double sigma = sigma_det(s);
  CHECK_THAT(wigner_eval(s, s.mean_p, s.mean_q),
             WithinRel(1.0 / (2.0 * std::numbers::pi * std::sqrt(sigma)),
                       1e-14));

  SECTION("pure-state peak is 1/(pi hbar)") {
    const GaussianState pure = ccs_state(0.3, 0.8, 0.2, -0.1);
    CHECK_THAT(wigner_eval(pure, pure.mean_p, pure.mean_q),
               WithinRel(1.0 / std::numbers::pi, 1e-12));
  }
  SECTION("normalized") {
    CHECK_THAT(oracles::wigner_norm_quadrature(s), WithinAbs(1.0, 1e-6));
  }
  SECTION("degenerate covariance rejected") {
    CHECK_THROWS_AS(wigner_eval(moments(0.5, 0.2, 0.4), 0.0, 0.0),
                    DegenerateState);
  }
}

TEST_CASE("density matrix elements", "[state]") {
  GaussianState s = moments(0.7, 0.6, -0.2);
  s.mean_q = 0.4;
  s.mean_p = -0.3;

  SECTION("diagonal peak") {
    const auto rho = density_matrix_eval(s, s.mean_q, s.mean_q);
    CHECK_THAT(rho.real(),
               WithinRel(1.0 / std::sqrt(2.0 * std::numbers::pi * s.var_qq),
                         1e-14));
    CHECK_THAT(rho.imag(), WithinAbs(0.0, 1e-15));
  }
  SECTION("hermitian") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
      const double x = oracles::uniform(rng, -3.0, 3.0);
      const double y = oracles::uniform(rng, -3.0, 3.0);
      const auto a = density_matrix_eval(s, x, y);
      const auto b = std::conj(density_matrix_eval(s, y, x));
      CHECK_THAT(std::abs(a - b), WithinAbs(0.0, 1e-15));
    }
  }
  SECTION("unit trace") {
    CHECK_THAT(oracles::density_trace_quadrature(s), WithinAbs(1.0, 1e-6));
  }
}

TEST_CASE("correlated coherent states", "[state]") {
  SECTION("r = 0 recovers the Glauber coherent state") {
    const GaussianState s = ccs_state(0.0, std::sqrt(0.5), 0.0, 0.0);
    CHECK_THAT(s.var_qq, WithinAbs(0.5, 1e-15));
    CHECK_THAT(s.var_pp, WithinAbs(0.5, 1e-15));
    CHECK_THAT(s.cov_pq, WithinAbs(0.0, 1e-15));
  }
  SECTION("r = 0.5, eta = 1") {
    const GaussianState s = ccs_state(0.5, 1.0, 0.0, 0.0);
    CHECK_THAT(s.var_pp, WithinRel(1.0 / 3.0, 1e-14));
    CHECK_THAT(s.cov_pq, WithinRel(0.5 / (2.0 * std::sqrt(0.75)), 1e-14));
    CHECK_THAT(sigma_det(s), WithinRel(0.25, 1e-14));
  }
  SECTION("invalid parameters") {
    CHECK_THROWS_AS(ccs_state(1.0, 1.0, 0.0, 0.0), InvalidParameter);
    CHECK_THROWS_AS(ccs_state(-1.2, 1.0, 0.0, 0.0), InvalidParameter);
    CHECK_THROWS_AS(ccs_state(0.0, 0.0, 0.0, 0.0), InvalidParameter);
  }
  SECTION("minimizing states are pure with the requested correlation") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
      const double r = oracles::uniform(rng, -0.95, 0.95);
      const double eta = oracles::uniform(rng, 0.2, 3.0);
      const GaussianState s = ccs_state(r, eta, 0.0, 0.0);
      CHECK_THAT(sigma_det(s), WithinRel(0.25, 1e-13));
      CHECK_THAT(purity_nu(s), WithinAbs(1.0, 1e-12));
      CHECK(linear_entropy(s) < 1e-12);
      CHECK(von_neumann_entropy(s) < 1e-9);
      CHECK_THAT(correlation_coefficient(s), WithinAbs(r, 1e-12));
    }
  }
  SECTION("hbar != 1") {
    const PhysConstants c{2.0, 1.0};
    const GaussianState s = ccs_state(0.4, 0.9, 0.0, 0.0, c);
    CHECK_THAT(sigma_det(s), WithinRel(1.0, 1e-13));  // hbar^2/4 = 1
    CHECK_THAT(purity_nu(s, c), WithinAbs(1.0, 1e-12));
    CHECK_THAT(wigner_eval(s, s.mean_p, s.mean_q),
               WithinRel(1.0 / (std::numbers::pi * c.hbar), 1e-12));
  }
}

TEST_CASE("moment purity matches Wigner purity for random states", "[state]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 4; ++i) {
    const GaussianState s = oracles::random_admissible_state(rng);
    const double tr_rho2 = oracles::wigner_purity_quadrature(s);
    CHECK_THAT(1.0 / purity_nu(s), WithinAbs(tr_rho2, 1e-6));
  }
}
