#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "purosc/constants.hpp"
#include "purosc/models.hpp"
#include "purosc/state.hpp"
#include "purosc/trajectory.hpp"

namespace purosc {

// Instantaneous purity-of-state conditions, one per master-equation variant.
// Each returns the left-hand side of the condition; zero means that an
// (exactly) pure state stays pure at this instant.

/// M^2 D_p sigma_qq - M D_q sigma_pq - (hbar^2/4) gamma_p.
double kg_purity_residual(const GaussianState& s, const KGCoefficients& kg,
                          double t, const PhysConstants& c = {});

/// Thermal form: gamma_p <p^2> sigma_qq - (M gamma_q <q^2> - <p^2>/M) sigma_pq
/// - (hbar^2/4) gamma_p. Evaluated symbol-for-symbol, independently of
/// kg_purity_residual.
double thermal_purity_residual(const GaussianState& s,
                               const KGThermalModel& model, double t,
                               const PhysConstants& c = {});

/// gamma <p^2> sigma_qq - (M omega0^2 <q^2> - <p^2>/M) sigma_pq
/// - (hbar^2/4) gamma.
double ohmic_purity_residual(const GaussianState& s, const OhmicModel& model,
                             const PhysConstants& c = {});

/// 2 alpha <p^2> sigma_qq - [M(alpha^2+eta^2)<q^2> - <p^2>/M] sigma_pq
/// - (hbar^2/2) alpha.
double drude_purity_residual(const GaussianState& s, const DrudeModel& model,
                             const PhysConstants& c = {});

/// K_c sigma_qq + (K_s / M omega0) sigma_pq - (hbar/4) gamma_c.
double weak_coupling_purity_residual(const GaussianState& s,
                                     const WeakCouplingModel& model,
                                     const PhysConstants& c = {});

/// M omega0 coth(hbar omega0/2 k_B T) sigma_qq - hbar/2.
double agarwal_purity_residual(const GaussianState& s,
                               const AgarwalModel& model,
                               const PhysConstants& c = {});

/// (M omega0 sigma_qq + sigma_pp/(M omega0)) coth(hbar omega0/2 k_B T) - hbar.
double weidlich_haake_purity_residual(const GaussianState& s,
                                      const WeidlichHaakeModel& model,
                                      const PhysConstants& c = {});

/// D_pp sigma_qq + D_qq sigma_pp - 2 D_pq sigma_pq - hbar^2 lambda / 2.
double lindblad_purity_residual(const GaussianState& s,
                                const LindbladParams& lp,
                                const PhysConstants& c = {});

/// Dispatch on the model variant.
double purity_residual(const GaussianState& s, const ModelVariant& model,
                       double t, const PhysConstants& c = {});

/// The unique Gaussian initial state whose purity condition holds for all t,
/// or nullopt when no such state exists.
/// KG family: the asymptotic variances, iff they are pure
/// (sigma_qq(inf) sigma_pp(inf) = hbar^2/4). Lindblad family: the variances
/// (D_qq, D_pp, D_pq)/lambda, iff D_pp D_qq - D_pq^2 = hbar^2 lambda^2/4 is
/// saturated. Constant coefficients only; throws UndampedModel when the model
/// has no dissipation at all (then every pure state trivially stays pure and
/// no unique answer exists).
std::optional<GaussianState> purity_preserving_initial_state(
    const ModelVariant& model, const PhysConstants& c = {},
    double rel_tol = 1e-9);

/// Expectation values of H and of the non-Hermitian H' that generates the
/// pure-state evolution, assembled from Gaussian moments. Defined for the
/// Lindblad and Weidlich-Haake variants; <H'> - <H> is purely imaginary and
/// proportional to the purity residual, so the two agree exactly when the
/// state satisfies the purity condition. Throws NotPure when nu > 1 + tol,
/// UnknownVariant for models without an H' form.
struct HamiltonianPair {
  std::complex<double> H;
  std::complex<double> H_prime;
};
HamiltonianPair hamiltonian_expectation_check(const GaussianState& s,
                                              const ModelVariant& model,
                                              const PhysConstants& c = {},
                                              double tol = 1e-6);

enum class PurityVerdict { PreservesPurity, LosesPurity };

struct PurityReport {
  std::vector<double> residuals;  ///< one per trajectory sample
  double max_abs_residual = 0.0;
  double threshold = 0.0;  ///< 1e-8 * (hbar^2/4) * model rate scale
  PurityVerdict verdict = PurityVerdict::LosesPurity;
};

/// Evaluates the model's purity condition along a trajectory.
PurityReport audit_purity(const Trajectory& traj, const ModelVariant& model,
                          const PhysConstants& c = {});

const char* to_string(PurityVerdict v);

}  // namespace purosc
