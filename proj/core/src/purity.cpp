#include "purosc/purity.hpp"

#include <cmath>

#include "purosc/dynamics.hpp"
#include "purosc/errors.hpp"

namespace purosc {

namespace {

std::pair<double, double> bath_values(const BathSpec& bath) {
  if (!bath.q2_eq || !bath.p2_eq) {
    throw MissingBathData("equilibrium variances <q^2>, <p^2> are required");
  }
  return {*bath.q2_eq, *bath.p2_eq};
}

}  // namespace

double kg_purity_residual(const GaussianState& s, const KGCoefficients& kg,
                          double t, const PhysConstants& c) {
  const double M = kg.M;
  return M * M * kg.D_p(t) * s.var_qq - M * kg.D_q(t) * s.cov_pq -
         0.25 * c.hbar * c.hbar * kg.gamma_p(t);
}

double thermal_purity_residual(const GaussianState& s,
                               const KGThermalModel& model, double t,
                               const PhysConstants& c) {
  const auto [q2, p2] = bath_values(model.bath);
  const double gq = model.gamma_q(t);
  const double gp = model.gamma_p(t);
  const double M = model.M;
  return gp * p2 * s.var_qq - (M * gq * q2 - p2 / M) * s.cov_pq -
         0.25 * c.hbar * c.hbar * gp;
}

double ohmic_purity_residual(const GaussianState& s, const OhmicModel& model,
                             const PhysConstants& c) {
  const auto [q2, p2] = bath_values(model.bath);
  const double M = model.M;
  return model.gamma * p2 * s.var_qq -
         (M * model.omega0 * model.omega0 * q2 - p2 / M) * s.cov_pq -
         0.25 * c.hbar * c.hbar * model.gamma;
}

double drude_purity_residual(const GaussianState& s, const DrudeModel& model,
                             const PhysConstants& c) {
  const auto [q2, p2] = bath_values(model.bath);
  const auto [gamma_q, gamma_p] = drude_gammas(model.alpha, model.eta);
  (void)gamma_p;
  const double M = model.M;
  return 2.0 * model.alpha * p2 * s.var_qq -
         (M * gamma_q * q2 - p2 / M) * s.cov_pq -
         0.5 * c.hbar * c.hbar * model.alpha;
}

double weak_coupling_purity_residual(const GaussianState& s,
                                     const WeakCouplingModel& model,
                                     const PhysConstants& c) {
  return model.K_c * s.var_qq +
         model.K_s / (model.M * model.omega0) * s.cov_pq -
         0.25 * c.hbar * model.gamma_c;
}

double agarwal_purity_residual(const GaussianState& s,
                               const AgarwalModel& model,
                               const PhysConstants& c) {
  const double coth = thermal_coth(model.omega0, model.temperature, c);
  return model.M * model.omega0 * coth * s.var_qq - 0.5 * c.hbar;
}

double weidlich_haake_purity_residual(const GaussianState& s,
                                      const WeidlichHaakeModel& model,
                                      const PhysConstants& c) {
  const double coth = thermal_coth(model.omega0, model.temperature, c);
  const double mo = model.M * model.omega0;
  return (mo * s.var_qq + s.var_pp / mo) * coth - c.hbar;
}

double lindblad_purity_residual(const GaussianState& s,
                                const LindbladParams& lp,
                                const PhysConstants& c) {
  return lp.D_pp * s.var_qq + lp.D_qq * s.var_pp - 2.0 * lp.D_pq * s.cov_pq -
         0.5 * c.hbar * c.hbar * lp.lambda;
}

double purity_residual(const GaussianState& s, const ModelVariant& model,
                       double t, const PhysConstants& c) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KGCoefficients>) {
          return kg_purity_residual(s, m, t, c);
        } else if constexpr (std::is_same_v<T, KGThermalModel>) {
          return thermal_purity_residual(s, m, t, c);
        } else if constexpr (std::is_same_v<T, OhmicModel>) {
          return ohmic_purity_residual(s, m, c);
        } else if constexpr (std::is_same_v<T, DrudeModel>) {
          return drude_purity_residual(s, m, c);
        } else if constexpr (std::is_same_v<T, WeakCouplingModel>) {
          return weak_coupling_purity_residual(s, m, c);
        } else if constexpr (std::is_same_v<T, AgarwalModel>) {
          return agarwal_purity_residual(s, m, c);
        } else if constexpr (std::is_same_v<T, WeidlichHaakeModel>) {
          return weidlich_haake_purity_residual(s, m, c);
        } else {
          return lindblad_purity_residual(s, m, c);
        }
      },
      model);
}

std::optional<GaussianState> purity_preserving_initial_state(
    const ModelVariant& model, const PhysConstants& c, double rel_tol) {
  if (!is_constant(model, c)) {
    throw ConstantCoefficientsRequired(
        "all-time purity classification is defined for constant coefficients");
  }
  const EvolutionModel evo = evolution_model(model, c);
  const double floor = 0.25 * c.hbar * c.hbar;

  if (const auto* kg = std::get_if<KGCoefficients>(&evo)) {
    const double gp = kg->gamma_p.constant_value();
    const double Dq = kg->D_q.constant_value();
    const double Dp = kg->D_p.constant_value();
    if (gp == 0.0 && Dq == 0.0 && Dp == 0.0) {
      throw UndampedModel(
          "closed system: every pure state stays pure, no unique answer");
    }
    const SecondMoments inf = kg_asymptotic_variances(*kg);
    const double det = inf.var_qq * inf.var_pp;  // cov_pq(inf) = 0
    if (std::abs(det - floor) > rel_tol * floor) return std::nullopt;
    return GaussianState{0.0, 0.0, inf.var_qq, inf.var_pp, inf.cov_pq};
  }

  const auto& lp = std::get<LindbladParams>(evo);
  validate(lp);
  if (!(lp.lambda > 0.0)) {
    // Positive diffusion with no dissipation mixes every state.
    return std::nullopt;
  }
  const double bound = floor * lp.lambda * lp.lambda;
  const double det = lp.D_pp * lp.D_qq - lp.D_pq * lp.D_pq;
  if (std::abs(det - bound) > rel_tol * bound) return std::nullopt;
  return GaussianState{0.0, 0.0, lp.D_qq / lp.lambda, lp.D_pp / lp.lambda,
                       lp.D_pq / lp.lambda};
}

HamiltonianPair hamiltonian_expectation_check(const GaussianState& s,
                                              const ModelVariant& model,
                                              const PhysConstants& c,
                                              double tol) {
  if (purity_nu(s, c) > 1.0 + tol) {
    throw NotPure("hamiltonian expectation check needs a pure state");
  }
  if (const auto* lp = std::get_if<LindbladParams>(&model)) {
    HamiltonianPair pair;
    const double H =
        0.5 * s.var_pp / lp->m +
        0.5 * lp->m * lp->omega * lp->omega * s.var_qq + lp->mu * s.cov_pq +
        0.5 * s.mean_p * s.mean_p / lp->m +
        0.5 * lp->m * lp->omega * lp->omega * s.mean_q * s.mean_q +
        lp->mu * s.mean_q * s.mean_p;
    pair.H = H;
    // The anti-Hermitian part of H' contributes -(i/hbar) times the purity
    // residual; the lambda*(sigma_p q - sigma_q p) term averages to zero.
    pair.H_prime = std::complex<double>(
        H, -lindblad_purity_residual(s, *lp, c) / c.hbar);
    return pair;
  }
  if (const auto* wh = std::get_if<WeidlichHaakeModel>(&model)) {
    const double mo = wh->M * wh->omega0;
    const double occupancy =
        (mo * (s.var_qq + s.mean_q * s.mean_q) +
         (s.var_pp + s.mean_p * s.mean_p) / mo) /
            (2.0 * c.hbar) -
        0.5;
    HamiltonianPair pair;
    pair.H = c.hbar * wh->omega0 * occupancy;
    pair.H_prime =
        pair.H + std::complex<double>(
                     0.0, -0.25 * wh->gamma_c *
                              weidlich_haake_purity_residual(s, *wh, c));
    return pair;
  }
  throw UnknownVariant(
      "H' expectation form is defined for the lindblad and weidlich_haake "
      "variants");
}

namespace {

double rate_scale(const Trajectory& traj, const ModelVariant& model) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KGCoefficients>) {
          double g = 0.0;
          for (double t : traj.times) g = std::max(g, std::abs(m.gamma_p(t)));
          return g;
        } else if constexpr (std::is_same_v<T, KGThermalModel>) {
          double g = 0.0;
          for (double t : traj.times) g = std::max(g, std::abs(m.gamma_p(t)));
          return g;
        } else if constexpr (std::is_same_v<T, OhmicModel>) {
          return m.gamma;
        } else if constexpr (std::is_same_v<T, DrudeModel>) {
          return 2.0 * m.alpha;
        } else if constexpr (std::is_same_v<T, WeakCouplingModel>) {
          return m.gamma_c;
        } else if constexpr (std::is_same_v<T, AgarwalModel>) {
          return m.kappa;
        } else if constexpr (std::is_same_v<T, WeidlichHaakeModel>) {
          return m.gamma_c;
        } else {
          return m.lambda;
        }
      },
      model);
}

}  // namespace

PurityReport audit_purity(const Trajectory& traj, const ModelVariant& model,
                          const PhysConstants& c) {
  PurityReport report;
  report.residuals.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double r = traj.diagnostics[k].purity_residual;
    report.residuals.push_back(r);
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r));
  }
  report.threshold =
      1e-8 * 0.25 * c.hbar * c.hbar * rate_scale(traj, model);
  report.verdict = report.max_abs_residual <= report.threshold
                       ? PurityVerdict::PreservesPurity
                       : PurityVerdict::LosesPurity;
  return report;
}

const char* to_string(PurityVerdict v) {
  return v == PurityVerdict::PreservesPurity ? "PreservesPurity"
                                             : "LosesPurity";
}

}  // namespace purosc
