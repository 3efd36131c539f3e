#pragma once

#include <array>
#include <optional>
#include <span>

#include "purosc/constants.hpp"
#include "purosc/models.hpp"
#include "purosc/state.hpp"
#include "purosc/trajectory.hpp"

namespace purosc {

struct MomentDerivative {
  double d_mean_q = 0.0;
  double d_mean_p = 0.0;
  double d_var_qq = 0.0;
  double d_var_pp = 0.0;
  double d_cov_pq = 0.0;
};

/// Right-hand side of the Karrlein-Grabert moment equations at time t.
MomentDerivative kg_moment_derivatives(const GaussianState& s,
                                       const KGCoefficients& kg, double t);

/// Right-hand side of the Lindblad moment equations:
///   d sigma_q /dt = sigma_p/m - (lambda-mu) sigma_q
///   d sigma_p /dt = -m omega^2 sigma_q - (lambda+mu) sigma_p
///   d sigma_qq/dt = -2(lambda-mu) sigma_qq + (2/m) sigma_pq + 2 D_qq
///   d sigma_pp/dt = -2(lambda+mu) sigma_pp - 2 m omega^2 sigma_pq + 2 D_pp
///   d sigma_pq/dt = -2 lambda sigma_pq + sigma_pp/m - m omega^2 sigma_qq + 2 D_pq
MomentDerivative lindblad_moment_derivatives(const GaussianState& s,
                                             const LindbladParams& lp);

struct IntegratorOptions {
  enum class Method { rk4, rk45 };
  Method method = Method::rk4;
  /// Fixed RK4 step. Default: min(2 pi / Omega_osc, 1 / rate) / 200 from the
  /// model's frequency and damping scales.
  std::optional<double> dt;
  double rel_tol = 1e-9;  ///< rk45 error control
  bool check_admissibility = true;
  double admissibility_rel_tol = kPurityRelTol;
};

/// Integrates the moment equations over t_grid (strictly increasing; the
/// first entry is the initial time) and fills per-sample diagnostics.
/// Throws AdmissibilityLost when a sampled state violates the uncertainty
/// relation beyond tolerance, StepRejected when rk45 cannot proceed.
Trajectory integrate(const ModelVariant& model, const GaussianState& initial,
                     std::span<const double> t_grid,
                     const IntegratorOptions& opts = {},
                     const PhysConstants& c = {});

/// Closed-form propagator of the second-moment system for constant KG
/// coefficients, in the scaled basis
///   X = (M sqrt(gamma_q) sigma_qq, sigma_pp / (M sqrt(gamma_q)), sigma_pq):
///   X(t) = T(t) (X(0) - X(inf)) + X(inf).
/// T covers the oscillatory (Omega^2 = 4 gamma_q - gamma_p^2 > 0), overdamped
/// (Omega^2 < 0) and near-critical (series) branches; T(0) = identity.
struct PropagatorKG {
  std::array<std::array<double, 3>, 3> T{};
  std::array<double, 3> x_inf{};
  double x_scale = 1.0;  ///< M sqrt(gamma_q)

  /// Applies the affine solution to the initial second moments; means pass
  /// through untouched.
  GaussianState apply(const GaussianState& initial) const;
};

/// Requires constant coefficients (ConstantCoefficientsRequired otherwise)
/// and gamma_p > 0 (UndampedModel: X(inf) does not exist).
PropagatorKG kg_analytic_propagator(const KGCoefficients& kg, double t);

/// The homogeneous T(t) alone; defined for gamma_p >= 0.
std::array<std::array<double, 3>, 3> kg_propagator_matrix(
    const KGCoefficients& kg, double t);

struct SecondMoments {
  double var_qq = 0.0;
  double var_pp = 0.0;
  double cov_pq = 0.0;
};

/// sigma_qq(inf) = (D_p + gamma_p D_q)/(gamma_p gamma_q),
/// sigma_pp(inf) = M^2 D_p / gamma_p, sigma_pq(inf) = 0.
/// Throws UndampedModel when gamma_p = 0.
SecondMoments kg_asymptotic_variances(const KGCoefficients& kg);

/// Unique steady state of the Lindblad moment equations (zero means).
/// Requires lambda > 0 and a Hurwitz second-moment drift matrix.
GaussianState lindblad_steady_state(const LindbladParams& lp);

/// KG family: sigma_pp/2M + M omega0^2 sigma_qq / 2.
/// Lindblad family: sigma_pp/2m + m omega^2 sigma_qq / 2 + mu sigma_pq.
double fluctuation_energy(const GaussianState& s, const ModelVariant& model,
                          const PhysConstants& c = {});

/// fluctuation_energy plus the same quadratic form on the means.
double total_energy(const GaussianState& s, const ModelVariant& model,
                    const PhysConstants& c = {});

}  // namespace purosc
