#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "purosc/constants.hpp"

namespace purosc {

/// A master-equation coefficient: either a constant or a function of time.
class CoefficientSource {
 public:
  CoefficientSource() = default;
  CoefficientSource(double value) : value_(value) {}  // NOLINT: implicit on purpose

  static CoefficientSource time_function(std::function<double(double)> f);

  /// Evaluate at time t. Throws CoefficientUndefined when the function yields
  /// a non-finite value.
  double operator()(double t) const;

  bool is_constant() const { return !fn_; }

  /// Throws ConstantCoefficientsRequired for time functions.
  double constant_value() const;

 private:
  double value_ = 0.0;
  std::function<double(double)> fn_;
};

/// Equilibrium bath data. <q^2> and <p^2> come from the equilibrium coordinate
/// autocorrelation function and are supplied by the user, not derived here.
struct BathSpec {
  double temperature = 0.0;
  std::optional<double> q2_eq;
  std::optional<double> p2_eq;
};

/// Coefficients of the generalized (Karrlein-Grabert form) master equation:
///   d sigma_qq/dt =  (2/M) sigma_pq
///   d sigma_pp/dt = -2 gamma_p sigma_pp - 2 M gamma_q sigma_pq + 2 M^2 D_p
///   d sigma_pq/dt = -M gamma_q sigma_qq + sigma_pp/M - gamma_p sigma_pq + M D_q
/// omega0 is bookkeeping only (its dynamical effect is inside gamma_q); it
/// enters the oscillator energy.
struct KGCoefficients {
  double M = 1.0;
  CoefficientSource gamma_q{0.0};
  CoefficientSource gamma_p{0.0};
  CoefficientSource D_q{0.0};
  CoefficientSource D_p{0.0};
  double omega0 = 1.0;
  /// Set when built from the strictly Ohmic model, whose <p^2> is
  /// logarithmically divergent and must be supplied already regularized.
  bool ohmic_regularized = false;

  static KGCoefficients constant(double M, double gamma_q, double gamma_p,
                                 double D_q, double D_p, double omega0);
  bool is_constant() const;
};

/// Validates M > 0 and, for constant coefficients, gamma_q > 0, gamma_p >= 0.
void validate(const KGCoefficients& kg);

/// Parameters of the Lindblad master equation for the damped oscillator with
/// H = p^2/2m + m omega^2 q^2/2 + (mu/2)(qp + pq).
struct LindbladParams {
  double m = 1.0;
  double omega = 1.0;
  double lambda = 0.0;  ///< dissipation constant, >= 0
  double mu = 0.0;
  double D_pp = 0.0;
  double D_qq = 0.0;
  double D_pq = 0.0;
};

/// m > 0, omega > 0, lambda >= 0, D_pp > 0, D_qq > 0.
void validate(const LindbladParams& lp);

/// coth(hbar*omega0 / (2 k_B T)); exactly 1 at T = 0.
double thermal_coth(double omega0, double temperature, const PhysConstants& c);

/// Thermal-initial-condition diffusion coefficients (also the constant-
/// coefficient case): D_q = gamma_q <q^2> - <p^2>/M^2, D_p = gamma_p <p^2>/M^2.
std::pair<double, double> kg_thermal_diffusion(double gamma_q, double gamma_p,
                                               const BathSpec& bath, double M);

/// Drude damping: gamma_q = alpha^2 + eta_d^2, gamma_p = 2 alpha.
std::pair<double, double> drude_gammas(double alpha, double eta_d);

/// KG coefficients of the Agarwal equation:
/// gamma_q = omega0^2, gamma_p = 2 kappa, D_q = 0,
/// D_p = (hbar omega0 kappa / M) coth(hbar omega0 / 2 k_B T).
KGCoefficients agarwal_coefficients(double kappa, double omega0,
                                    double temperature, double M,
                                    const PhysConstants& c = {});

/// KG coefficients of the weak-coupling equation: gamma_q = omega0^2 +
/// omega0*gamma_s, gamma_p = gamma_c, D_q = -hbar K_s/(M^2 omega0),
/// D_p = hbar K_c/M^2.
KGCoefficients weak_coupling_kg(double K_c, double K_s, double gamma_c,
                                double gamma_s, double omega0, double M,
                                const PhysConstants& c = {});

/// Downward/upward rates gamma_{down,up} = (gamma_c/4)[coth(..) +- 1].
std::pair<double, double> weidlich_haake_rates(double gamma_c, double omega0,
                                               double temperature,
                                               const PhysConstants& c = {});

/// Embedding of the Weidlich-Haake equation into the Lindblad family:
/// D_pp = hbar M omega0 (gd+gu)/2, D_qq = hbar (gd+gu)/(2 M omega0),
/// D_pq = 0, lambda = gd - gu, mu = 0.
LindbladParams weidlich_haake_to_lindblad(double gamma_down, double gamma_up,
                                          double omega0, double M,
                                          const PhysConstants& c = {});

struct ConstraintCheck {
  double residual = 0.0;  ///< D_pp D_qq - D_pq^2 - hbar^2 lambda^2 / 4
  bool ok = false;
};

/// Fundamental positivity constraint on the diffusion matrix.
ConstraintCheck lindblad_constraint_check(const LindbladParams& lp,
                                          const PhysConstants& c = {},
                                          double rel_tol = 1e-9);

/// The unique diffusion coefficients for which an initial correlated coherent
/// state stays pure (generalized Einstein relations). Underdamped only:
/// throws OverdampedRegime when omega <= |mu|. With Omega = sqrt(omega^2-mu^2):
/// D_qq = hbar lambda/(2 m Omega), D_pp = hbar lambda m omega^2/(2 Omega),
/// D_pq = -hbar lambda mu/(2 Omega).
LindbladParams purity_preserving_diffusion(double lambda, double mu,
                                           double omega, double m,
                                           const PhysConstants& c = {});

/// Coefficients (c_q, c_p) of the single Lindblad operator V = c_q q + c_p p
/// that reproduces purity-preserving diffusion; satisfies [V, V+] = 2 hbar
/// lambda, i.e. 2 hbar Im(conj(c_q) c_p) = 2 hbar lambda.
std::pair<std::complex<double>, std::complex<double>> lindblad_single_operator(
    const LindbladParams& lp, const PhysConstants& c = {});

// ---------------------------------------------------------------------------
// Named model variants. Each knows how to lower itself to the evolution
// family it belongs to; the variant-specific purity conditions and entropy
// rates live in purity.hpp / entropy.hpp.

struct KGThermalModel {
  double M = 1.0;
  double omega0 = 1.0;
  CoefficientSource gamma_q{0.0};
  CoefficientSource gamma_p{0.0};
  BathSpec bath;
  KGCoefficients to_kg() const;
};

struct OhmicModel {
  double gamma = 0.0;  ///< Laplace transform of the damping kernel
  double omega0 = 1.0;
  double M = 1.0;
  BathSpec bath;  ///< <p^2> must be a regularized value
  KGCoefficients to_kg() const;
};

struct DrudeModel {
  double alpha = 0.0;
  double eta = 1.0;
  double omega0 = 1.0;
  double M = 1.0;
  BathSpec bath;
  KGCoefficients to_kg() const;
};

struct WeakCouplingModel {
  double K_c = 0.0;
  double K_s = 0.0;
  double gamma_c = 0.0;
  double gamma_s = 0.0;  ///< frequency shift; may be absorbed into omega0
  double omega0 = 1.0;
  double M = 1.0;
  KGCoefficients to_kg(const PhysConstants& c = {}) const;
};

struct AgarwalModel {
  double kappa = 0.0;
  double omega0 = 1.0;
  double temperature = 0.0;
  double M = 1.0;
  KGCoefficients to_kg(const PhysConstants& c = {}) const;
};

struct WeidlichHaakeModel {
  double gamma_c = 0.0;
  double omega0 = 1.0;
  double temperature = 0.0;
  double M = 1.0;
  LindbladParams to_lindblad(const PhysConstants& c = {}) const;
};

using ModelVariant =
    std::variant<KGCoefficients, KGThermalModel, OhmicModel, DrudeModel,
                 WeakCouplingModel, AgarwalModel, WeidlichHaakeModel,
                 LindbladParams>;

/// The two families the moment equations know how to evolve.
using EvolutionModel = std::variant<KGCoefficients, LindbladParams>;

EvolutionModel evolution_model(const ModelVariant& model,
                               const PhysConstants& c = {});

bool is_lindblad_family(const ModelVariant& model);

std::string family_name(const ModelVariant& model);

/// True when every coefficient of the lowered model is time-independent.
bool is_constant(const ModelVariant& model, const PhysConstants& c = {});

}  // namespace purosc
