#pragma once

#include <vector>

#include "purosc/constants.hpp"
#include "purosc/models.hpp"
#include "purosc/state.hpp"
#include "purosc/trajectory.hpp"

namespace purosc {

/// dS_l/dt = (hbar / 2 sigma^{3/2}) [M^2 D_p sigma_qq - M D_q sigma_pq
///                                   - gamma_p sigma].
double kg_entropy_rate(const GaussianState& s, const KGCoefficients& kg,
                       double t, const PhysConstants& c = {});

/// dS_l/dt = (hbar / 2 sigma^{3/2}) [D_pp sigma_qq + D_qq sigma_pp
///                                   - 2 D_pq sigma_pq - 2 lambda sigma].
double lindblad_entropy_rate(const GaussianState& s, const LindbladParams& lp,
                             const PhysConstants& c = {});

/// Closed-form entropy production rate of the given model variant, each as
/// printed for that model (thermal, Ohmic, Drude, weak-coupling, Agarwal,
/// Weidlich-Haake); all reduce to kg_entropy_rate or lindblad_entropy_rate
/// under the variant's coefficient substitution.
double model_entropy_rate(const GaussianState& s, const ModelVariant& model,
                          double t, const PhysConstants& c = {});

struct EntropyRateRecord {
  double t = 0.0;
  double rate_formula = 0.0;
  double rate_fd = 0.0;  ///< central finite difference of S_l
  double gap = 0.0;      ///< |rate_formula - rate_fd|
};

struct EntropyAudit {
  std::vector<EntropyRateRecord> records;  ///< interior samples only
  double max_gap = 0.0;
  /// Richardson-extrapolated (O(h^4)) stencil where 2 neighbors exist on each
  /// side; gauges whether max_gap is stencil-limited.
  double max_gap_richardson = 0.0;
};

/// Cross-validates the closed-form rate against finite differences of the
/// linear entropy along a uniformly sampled trajectory (>= 3 samples).
EntropyAudit rate_fd_audit(const Trajectory& traj, const ModelVariant& model,
                           const PhysConstants& c = {});

}  // namespace purosc
