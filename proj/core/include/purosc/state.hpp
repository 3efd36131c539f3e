#pragma once

#include <complex>

#include "purosc/constants.hpp"

namespace purosc {

/// Gaussian oscillator state: first moments plus second central moments.
/// Five real numbers fully determine the Wigner function.
struct GaussianState {
  double mean_q = 0.0;  ///< <q>
  double mean_p = 0.0;  ///< <p>
  double var_qq = 0.0;  ///< sigma_qq
  double var_pp = 0.0;  ///< sigma_pp
  double cov_pq = 0.0;  ///< sigma_pq, sign unconstrained
};

enum class UncertaintyClass { Violating, PureBoundary, Mixed };

/// Determinant of the 2x2 dispersion matrix: sigma_pp*sigma_qq - sigma_pq^2.
double sigma_det(const GaussianState& s);

/// Purity coefficient nu = (2/hbar)*sqrt(sigma); 1 for pure states, > 1 for
/// mixtures. Clamps to 1 when sigma undershoots hbar^2/4 within kPurityRelTol,
/// throws UncertaintyViolation beyond it.
double purity_nu(const GaussianState& s, const PhysConstants& c = {});

/// S_l = 1 - 1/nu = 1 - Tr(rho^2).
double linear_entropy(const GaussianState& s, const PhysConstants& c = {});

/// S = ((nu+1)/2)ln((nu+1)/2) - ((nu-1)/2)ln((nu-1)/2), with S(1) = 0.
double von_neumann_entropy(const GaussianState& s, const PhysConstants& c = {});

/// r = sigma_pq / sqrt(sigma_qq*sigma_pp).
double correlation_coefficient(const GaussianState& s);

UncertaintyClass classify_uncertainty(const GaussianState& s,
                                      const PhysConstants& c = {},
                                      double rel_tol = kPurityRelTol);

/// Gaussian Wigner density at phase-space point (p, q). Normalized to 1.
double wigner_eval(const GaussianState& s, double p, double q);

/// Coordinate-representation matrix element <x|rho|y> of the general Gaussian
/// density matrix. Hermitian by construction; the diagonal is real positive.
std::complex<double> density_matrix_eval(const GaussianState& s, double x,
                                         double y,
                                         const PhysConstants& c = {});

/// Correlated coherent state with correlation coefficient r (|r| < 1) and
/// position spread eta = sqrt(sigma_qq). Saturates the uncertainty relation:
/// sigma_qq = eta^2, sigma_pp = hbar^2/(4 eta^2 (1-r^2)),
/// sigma_pq = hbar r / (2 sqrt(1-r^2)). r = 0, eta = sqrt(hbar/2 m omega)
/// recovers the Glauber coherent state.
GaussianState ccs_state(double r, double eta, double mean_q, double mean_p,
                        const PhysConstants& c = {});

/// True when sigma >= (hbar^2/4)*(1 - rel_tol).
bool is_admissible(const GaussianState& s, const PhysConstants& c = {},
                   double rel_tol = kPurityRelTol);

}  // namespace purosc
