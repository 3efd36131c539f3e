#include "purosc/entropy.hpp"

#include <cmath>

#include "purosc/errors.hpp"

namespace purosc {

namespace {

double sigma_pow32(const GaussianState& s) {
  const double sigma = sigma_det(s);
  if (!(sigma > 0.0)) throw DegenerateState("entropy rate needs sigma > 0");
  return sigma * std::sqrt(sigma);
}

std::pair<double, double> bath_values(const BathSpec& bath) {
  if (!bath.q2_eq || !bath.p2_eq) {
    throw MissingBathData("equilibrium variances <q^2>, <p^2> are required");
  }
  return {*bath.q2_eq, *bath.p2_eq};
}

}  // namespace

double kg_entropy_rate(const GaussianState& s, const KGCoefficients& kg,
                       double t, const PhysConstants& c) {
  const double sigma = sigma_det(s);
  const double s32 = sigma_pow32(s);
  const double M = kg.M;
  const double bracket = M * M * kg.D_p(t) * s.var_qq -
                         M * kg.D_q(t) * s.cov_pq - kg.gamma_p(t) * sigma;
  return c.hbar / (2.0 * s32) * bracket;
}

double lindblad_entropy_rate(const GaussianState& s, const LindbladParams& lp,
                             const PhysConstants& c) {
  const double sigma = sigma_det(s);
  const double s32 = sigma_pow32(s);
  const double bracket = lp.D_pp * s.var_qq + lp.D_qq * s.var_pp -
                         2.0 * lp.D_pq * s.cov_pq - 2.0 * lp.lambda * sigma;
  return c.hbar / (2.0 * s32) * bracket;
}

double model_entropy_rate(const GaussianState& s, const ModelVariant& model,
                          double t, const PhysConstants& c) {
  const double sigma = sigma_det(s);
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KGCoefficients>) {
          return kg_entropy_rate(s, m, t, c);
        } else if constexpr (std::is_same_v<T, KGThermalModel>) {
          const auto [q2, p2] = bath_values(m.bath);
          const double gq = m.gamma_q(t);
          const double gp = m.gamma_p(t);
          const double bracket = gp * p2 * s.var_qq -
                                 (m.M * gq * q2 - p2 / m.M) * s.cov_pq -
                                 gp * sigma;
          return c.hbar / (2.0 * sigma_pow32(s)) * bracket;
        } else if constexpr (std::is_same_v<T, OhmicModel>) {
          const auto [q2, p2] = bath_values(m.bath);
          const double bracket =
              m.gamma * p2 * s.var_qq -
              (m.M * m.omega0 * m.omega0 * q2 - p2 / m.M) * s.cov_pq -
              m.gamma * sigma;
          return c.hbar / (2.0 * sigma_pow32(s)) * bracket;
        } else if constexpr (std::is_same_v<T, DrudeModel>) {
          const auto [q2, p2] = bath_values(m.bath);
          const auto [gamma_q, gamma_p] = drude_gammas(m.alpha, m.eta);
          const double bracket = gamma_p * p2 * s.var_qq -
                                 (m.M * gamma_q * q2 - p2 / m.M) * s.cov_pq -
                                 gamma_p * sigma;
          return c.hbar / (2.0 * sigma_pow32(s)) * bracket;
        } else if constexpr (std::is_same_v<T, WeakCouplingModel>) {
          const double bracket = m.K_c * s.var_qq +
                                 m.K_s / (m.M * m.omega0) * s.cov_pq -
                                 m.gamma_c * sigma / c.hbar;
          return c.hbar * c.hbar / (2.0 * sigma_pow32(s)) * bracket;
        } else if constexpr (std::is_same_v<T, AgarwalModel>) {
          const double coth = thermal_coth(m.omega0, m.temperature, c);
          const double bracket =
              m.M * m.omega0 * coth * s.var_qq - 2.0 * sigma / c.hbar;
          return c.hbar * c.hbar * m.kappa / (2.0 * sigma_pow32(s)) * bracket;
        } else if constexpr (std::is_same_v<T, WeidlichHaakeModel>) {
          const double coth = thermal_coth(m.omega0, m.temperature, c);
          const double mo = m.M * m.omega0;
          const double bracket = (mo * s.var_qq + s.var_pp / mo) * coth -
                                 4.0 * sigma / c.hbar;
          return c.hbar * c.hbar * m.gamma_c / (8.0 * sigma_pow32(s)) *
                 bracket;
        } else {
          return lindblad_entropy_rate(s, m, c);
        }
      },
      model);
}

EntropyAudit rate_fd_audit(const Trajectory& traj, const ModelVariant& model,
                           const PhysConstants& c) {
  const std::size_t n = traj.size();
  if (n < 3) throw InsufficientSamples("rate audit needs >= 3 samples");
  const double h = traj.times[1] - traj.times[0];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double hk = traj.times[k + 1] - traj.times[k];
    if (std::abs(hk - h) > 1e-9 * std::abs(h)) {
      throw InvalidParameter("rate audit needs uniformly spaced samples");
    }
  }

  EntropyAudit audit;
  audit.records.reserve(n - 2);
  auto sl = [&](std::size_t k) { return traj.diagnostics[k].linear_entropy; };
  for (std::size_t k = 1; k + 1 < n; ++k) {
    EntropyRateRecord rec;
    rec.t = traj.times[k];
    rec.rate_formula =
        model_entropy_rate(traj.states[k], model, traj.times[k], c);
    rec.rate_fd = (sl(k + 1) - sl(k - 1)) / (2.0 * h);
    rec.gap = std::abs(rec.rate_formula - rec.rate_fd);
    audit.max_gap = std::max(audit.max_gap, rec.gap);
    if (k >= 2 && k + 2 < n) {
      const double d2h = (sl(k + 2) - sl(k - 2)) / (4.0 * h);
      const double richardson = (4.0 * rec.rate_fd - d2h) / 3.0;
      audit.max_gap_richardson = std::max(
          audit.max_gap_richardson, std::abs(rec.rate_formula - richardson));
    }
    audit.records.push_back(rec);
  }
  return audit;
}

}  // namespace purosc
