#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "purosc/errors.hpp"
#include "purosc/models.hpp"
#include "support/oracles.hpp"

using namespace purosc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("coefficient sources", "[models]") {
  const CoefficientSource k(0.3);
  CHECK(k.is_constant());
  CHECK(k(12.0) == 0.3);
  CHECK(k.constant_value() == 0.3);

  const auto f = CoefficientSource::time_function(
      [](double t) { return 0.1 * std::exp(-t); });
  CHECK_FALSE(f.is_constant());
  CHECK_THAT(f(1.0), WithinRel(0.1 * std::exp(-1.0), 1e-15));
  CHECK_THROWS_AS(f.constant_value(), ConstantCoefficientsRequired);

  const auto bad = CoefficientSource::time_function(
      [](double t) { return std::sqrt(t); });
  CHECK_THROWS_AS(bad(-1.0), CoefficientUndefined);
}

TEST_CASE("parameter validation", "[models]") {
  CHECK_THROWS_AS(KGCoefficients::constant(0.0, 1, 0.1, 0, 0.1, 1),
                  InvalidParameter);
  CHECK_THROWS_AS(KGCoefficients::constant(1.0, 0.0, 0.1, 0, 0.1, 1),
                  InvalidParameter);
  CHECK_THROWS_AS(KGCoefficients::constant(1.0, 1.0, -0.1, 0, 0.1, 1),
                  InvalidParameter);

  LindbladParams lp{1, 1, -0.1, 0, 0.1, 0.1, 0};
  CHECK_THROWS_AS(validate(lp), InvalidParameter);
  lp.lambda = 0.1;
  lp.D_pp = 0.0;
  CHECK_THROWS_AS(validate(lp), InvalidParameter);
}

TEST_CASE("thermal diffusion coefficients", "[models]") {
  BathSpec bath{0.0, 0.55, 0.5};
  const auto [D_q, D_p] = kg_thermal_diffusion(1.0, 0.2, bath, 1.0);
  CHECK_THAT(D_q, WithinAbs(0.05, 1e-15));
  CHECK_THAT(D_p, WithinAbs(0.1, 1e-15));

  SECTION("no damping means no momentum diffusion") {
    CHECK(kg_thermal_diffusion(1.0, 0.0, bath, 1.0).second == 0.0);
  }
  SECTION("D_q cancellation when gamma_q <q^2> = <p^2>/M^2") {
    BathSpec b{0.0, 0.5, 0.5};
    CHECK_THAT(kg_thermal_diffusion(1.0, 0.2, b, 1.0).first,
               WithinAbs(0.0, 1e-15));
  }
  SECTION("bath data required") {
    CHECK_THROWS_AS(kg_thermal_diffusion(1.0, 0.2, BathSpec{}, 1.0),
                    MissingBathData);
  }
}

TEST_CASE("drude gammas", "[models]") {
  const auto [gq, gp] = drude_gammas(0.1, 1.0);
  CHECK_THAT(gq, WithinAbs(1.01, 1e-15));
  CHECK_THAT(gp, WithinAbs(0.2, 1e-15));
  CHECK(drude_gammas(0.0, 1.0) == std::pair{1.0, 0.0});
  CHECK(drude_gammas(0.5, 0.0) == std::pair{0.25, 1.0});

  SECTION("oscillatory branch whenever eta != 0") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) {
      const double a = oracles::uniform(rng, 0.0, 2.0);
      const double e = oracles::uniform(rng, 0.01, 2.0);
      const auto [q, p] = drude_gammas(a, e);
      CHECK_THAT(4.0 * q - p * p, WithinRel(4.0 * e * e, 1e-12));
    }
  }
}

TEST_CASE("agarwal coefficients", "[models]") {
  SECTION("T = 0") {
    const KGCoefficients kg = agarwal_coefficients(0.1, 1.0, 0.0, 1.0);
    CHECK_THAT(kg.gamma_q.constant_value(), WithinAbs(1.0, 1e-15));
    // The [q,{p,rho}] term of the Agarwal equation carries kappa where the
    // general form carries gamma_p/2, so gamma_p = 2*kappa.
    CHECK_THAT(kg.gamma_p.constant_value(), WithinAbs(0.2, 1e-15));
    CHECK(kg.D_q.constant_value() == 0.0);
    CHECK_THAT(kg.D_p.constant_value(), WithinAbs(0.1, 1e-15));
    CHECK_THAT(kg.D_p.constant_value() / kg.gamma_p.constant_value(),
               WithinRel(0.5, 1e-15));  // hbar omega0 / 2M
  }
  SECTION("high-temperature asymptote D_p ~ 2 kappa k_B T / M") {
    const double T = 500.0;
    const KGCoefficients kg = agarwal_coefficients(0.1, 1.0, T, 1.0);
    CHECK_THAT(kg.D_p.constant_value(), WithinRel(2.0 * 0.1 * T, 1e-3));
  }
  SECTION("kappa = 0 shuts dissipation off") {
    const KGCoefficients kg = agarwal_coefficients(0.0, 1.0, 1.0, 1.0);
    CHECK(kg.gamma_p.constant_value() == 0.0);
    CHECK(kg.D_p.constant_value() == 0.0);
    CHECK(kg.D_q.constant_value() == 0.0);
  }
}

TEST_CASE("weidlich-haake rates", "[models]") {
  SECTION("T = 0") {
    const auto [down, up] = weidlich_haake_rates(0.2, 1.0, 0.0);
    CHECK_THAT(down, WithinAbs(0.1, 1e-15));
    CHECK(up == 0.0);
  }
  SECTION("difference is gamma_c/2 at any temperature") {
    for (double T : {0.0, 0.3, 1.0, 10.0}) {
      const auto [down, up] = weidlich_haake_rates(0.2, 1.0, T);
      CHECK_THAT(down - up, WithinRel(0.1, 1e-13));
      CHECK(down >= up);
      CHECK(up >= 0.0);
    }
  }
  SECTION("coth = 3 arithmetic") {
    const double T = 1.0 / (2.0 * std::atanh(1.0 / 3.0));  // hbar=omega0=kB=1
    const auto [down, up] = weidlich_haake_rates(0.2, 1.0, T);
    CHECK_THAT(down, WithinRel(0.2, 1e-12));
    CHECK_THAT(up, WithinRel(0.1, 1e-12));
  }
}

TEST_CASE("weidlich-haake lindblad embedding", "[models]") {
  SECTION("T = 0 values") {
    const LindbladParams lp = weidlich_haake_to_lindblad(0.1, 0.0, 1.0, 1.0);
    CHECK_THAT(lp.lambda, WithinAbs(0.1, 1e-15));
    CHECK_THAT(lp.D_pp, WithinAbs(0.05, 1e-15));  // hbar M omega0 gamma_c / 4
    CHECK_THAT(lp.D_qq, WithinAbs(0.05, 1e-15));
    CHECK(lp.D_pq == 0.0);
    CHECK(lp.mu == 0.0);
  }
  SECTION("always of Lindblad form; strict only for T > 0") {
    for (double T : {0.0, 0.2, 1.0, 7.0}) {
      const auto [down, up] = weidlich_haake_rates(0.3, 1.2, T);
      const LindbladParams lp = weidlich_haake_to_lindblad(down, up, 1.2, 0.8);
      const ConstraintCheck check = lindblad_constraint_check(lp);
      CHECK(check.ok);
      if (T == 0.0) {
        CHECK_THAT(check.residual, WithinAbs(0.0, 1e-15));
      } else {
        CHECK(check.residual > 1e-6);
      }
    }
  }
  SECTION("equal rates mean pure diffusion") {
    const LindbladParams lp = weidlich_haake_to_lindblad(0.2, 0.2, 1.0, 1.0);
    CHECK(lp.lambda == 0.0);
    CHECK(lp.D_pp > 0.0);
  }
}

TEST_CASE("lindblad constraint check", "[models]") {
  SECTION("simple pass and fail") {
    CHECK(lindblad_constraint_check({1, 1, 0, 0, 1.0, 1.0, 0.0}).ok);
    CHECK_THAT(lindblad_constraint_check({1, 1, 0, 0, 1.0, 1.0, 0.0}).residual,
               WithinAbs(1.0, 1e-15));
    const ConstraintCheck bad =
        lindblad_constraint_check({1, 1, 1.0, 0, 0.1, 0.1, 0.0});
    CHECK_FALSE(bad.ok);
    CHECK_THAT(bad.residual, WithinAbs(-0.24, 1e-15));
  }
  SECTION("purity-preserving coefficients saturate the bound") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
      const double omega = oracles::uniform(rng, 0.3, 2.5);
      const double mu = oracles::uniform(rng, -0.95, 0.95) * omega;
      const double lambda = oracles::uniform(rng, 0.01, 1.0);
      const double m = oracles::uniform(rng, 0.3, 3.0);
      const LindbladParams lp =
          purity_preserving_diffusion(lambda, mu, omega, m);
      const ConstraintCheck check = lindblad_constraint_check(lp);
      CHECK(check.ok);
      const double scale = 0.25 * lambda * lambda;
      CHECK_THAT(check.residual / scale, WithinAbs(0.0, 1e-12));
    }
  }
}

TEST_CASE("purity-preserving diffusion coefficients", "[models]") {
  SECTION("mu = 0 reduction") {
    const LindbladParams lp = purity_preserving_diffusion(0.1, 0.0, 1.0, 1.0);
    CHECK_THAT(lp.D_pp, WithinAbs(0.05, 1e-15));
    CHECK_THAT(lp.D_qq, WithinAbs(0.05, 1e-15));
    CHECK(lp.D_pq == 0.0);
  }
  SECTION("mu = 0.6 example") {
    const LindbladParams lp = purity_preserving_diffusion(0.1, 0.6, 1.0, 1.0);
    CHECK_THAT(lp.D_pp, WithinRel(0.0625, 1e-14));
    CHECK_THAT(lp.D_qq, WithinRel(0.0625, 1e-14));
    CHECK_THAT(lp.D_pq, WithinRel(-0.0375, 1e-14));
    CHECK_THAT(lp.D_pp * lp.D_qq - lp.D_pq * lp.D_pq,
               WithinRel(0.0025, 1e-13));
  }
  SECTION("overdamped regime rejected") {
    CHECK_THROWS_AS(purity_preserving_diffusion(0.1, 1.0, 1.0, 1.0),
                    OverdampedRegime);
    CHECK_THROWS_AS(purity_preserving_diffusion(0.1, 1.5, 1.0, 1.0),
                    OverdampedRegime);
  }
}

TEST_CASE("single lindblad operator", "[models]") {
  SECTION("commutator identity for purity-preserving inputs") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
      const double omega = oracles::uniform(rng, 0.3, 2.0);
      const double mu = oracles::uniform(rng, -0.9, 0.9) * omega;
      const double lambda = oracles::uniform(rng, 0.0, 0.8);
      const double m = oracles::uniform(rng, 0.3, 2.0);
      const LindbladParams lp =
          purity_preserving_diffusion(lambda, mu, omega, m);
      const auto [c_q, c_p] = lindblad_single_operator(lp);
      const double commutator = 2.0 * std::imag(std::conj(c_q) * c_p);
      CHECK_THAT(commutator, WithinAbs(2.0 * lambda, 1e-12));
    }
  }
  SECTION("lambda = 0 gives a vanishing commutator") {
    const LindbladParams lp = purity_preserving_diffusion(0.0, 0.3, 1.0, 1.0);
    // degenerate: all D's vanish with lambda
    CHECK_THROWS_AS(lindblad_single_operator(lp), InvalidParameter);
    LindbladParams diffusive{1, 1, 0.0, 0.0, 0.1, 0.1, 0.0};
    const auto [c_q, c_p] = lindblad_single_operator(diffusive);
    CHECK_THAT(2.0 * std::imag(std::conj(c_q) * c_p), WithinAbs(0.0, 1e-15));
  }
}

TEST_CASE("thermal model with time-dependent gammas", "[models]") {
  KGThermalModel model;
  model.M = 2.0;
  model.bath = BathSpec{0.0, 0.55, 0.5};
  model.gamma_q = CoefficientSource::time_function(
      [](double t) { return 1.0 + 0.1 * std::sin(t); });
  model.gamma_p = CoefficientSource::time_function(
      [](double t) { return 0.2 * std::exp(-0.1 * t); });
  const KGCoefficients kg = model.to_kg();
  CHECK_FALSE(kg.is_constant());
  for (double t : {0.0, 0.7, 3.0}) {
    const double gq = 1.0 + 0.1 * std::sin(t);
    const double gp = 0.2 * std::exp(-0.1 * t);
    CHECK_THAT(kg.D_q(t), WithinRel(gq * 0.55 - 0.5 / 4.0, 1e-13));
    CHECK_THAT(kg.D_p(t), WithinRel(gp * 0.5 / 4.0, 1e-13));
  }
}

TEST_CASE("variant plumbing", "[models]") {
  const OhmicModel ohmic{0.2, 1.0, 1.0, BathSpec{0.0, 0.5, 0.5}};
  const KGCoefficients kg = ohmic.to_kg();
  CHECK(kg.ohmic_regularized);
  CHECK_THAT(kg.gamma_p.constant_value(), WithinAbs(0.2, 1e-15));
  CHECK_THAT(kg.gamma_q.constant_value(), WithinAbs(1.0, 1e-15));

  const ModelVariant v1 = ohmic;
  CHECK(family_name(v1) == "ohmic");
  CHECK_FALSE(is_lindblad_family(v1));
  CHECK(is_constant(v1));

  const ModelVariant v2 = WeidlichHaakeModel{0.2, 1.0, 0.0, 1.0};
  CHECK(family_name(v2) == "weidlich_haake");
  CHECK(is_lindblad_family(v2));
  CHECK(std::holds_alternative<LindbladParams>(evolution_model(v2)));

  const ModelVariant v3 = WeakCouplingModel{0.05, -0.02, 0.1, 0.0, 1.0, 1.0};
  const EvolutionModel evo = evolution_model(v3);
  const auto& wkg = std::get<KGCoefficients>(evo);
  CHECK_THAT(wkg.gamma_p.constant_value(), WithinAbs(0.1, 1e-15));
  CHECK_THAT(wkg.D_p.constant_value(), WithinAbs(0.05, 1e-15));
  CHECK_THAT(wkg.D_q.constant_value(), WithinAbs(0.02, 1e-15));
}
