#include "purosc/models.hpp"

#include <cmath>
#include <sstream>

#include "purosc/errors.hpp"

namespace purosc {

CoefficientSource CoefficientSource::time_function(
    std::function<double(double)> f) {
  if (!f) throw InvalidParameter("time function must be callable");
  CoefficientSource src;
  src.fn_ = std::move(f);
  return src;
}

double CoefficientSource::operator()(double t) const {
  if (!fn_) return value_;
  const double v = fn_(t);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "coefficient undefined at t = " << t;
    throw CoefficientUndefined(msg.str());
  }
  return v;
}

double CoefficientSource::constant_value() const {
  if (fn_) {
    throw ConstantCoefficientsRequired(
        "operation requires a constant coefficient");
  }
  return value_;
}

KGCoefficients KGCoefficients::constant(double M, double gamma_q,
                                        double gamma_p, double D_q, double D_p,
                                        double omega0) {
  KGCoefficients kg;
  kg.M = M;
  kg.gamma_q = gamma_q;
  kg.gamma_p = gamma_p;
  kg.D_q = D_q;
  kg.D_p = D_p;
  kg.omega0 = omega0;
  validate(kg);
  return kg;
}

bool KGCoefficients::is_constant() const {
  return gamma_q.is_constant() && gamma_p.is_constant() && D_q.is_constant() &&
         D_p.is_constant();
}

void validate(const KGCoefficients& kg) {
  if (!(kg.M > 0.0)) throw InvalidParameter("M must be > 0");
  if (kg.is_constant()) {
    if (!(kg.gamma_q.constant_value() > 0.0)) {
      throw InvalidParameter("constant gamma_q must be > 0 (bound oscillator)");
    }
    if (kg.gamma_p.constant_value() < 0.0) {
      throw InvalidParameter("constant gamma_p must be >= 0 (damping)");
    }
  }
}

void validate(const LindbladParams& lp) {
  if (!(lp.m > 0.0)) throw InvalidParameter("m must be > 0");
  if (!(lp.omega > 0.0)) throw InvalidParameter("omega must be > 0");
  if (lp.lambda < 0.0) throw InvalidParameter("lambda must be >= 0");
  if (!(lp.D_pp > 0.0)) throw InvalidParameter("D_pp must be > 0");
  if (!(lp.D_qq > 0.0)) throw InvalidParameter("D_qq must be > 0");
}

double thermal_coth(double omega0, double temperature, const PhysConstants& c) {
  if (temperature < 0.0) throw InvalidParameter("temperature must be >= 0");
  if (temperature == 0.0) return 1.0;
  return 1.0 / std::tanh(c.hbar * omega0 / (2.0 * c.k_B * temperature));
}

namespace {

std::pair<double, double> require_bath(const BathSpec& bath) {
  if (!bath.q2_eq || !bath.p2_eq) {
    throw MissingBathData("equilibrium variances <q^2>, <p^2> are required");
  }
  if (!(*bath.q2_eq > 0.0) || !(*bath.p2_eq > 0.0)) {
    throw MissingBathData("equilibrium variances must be > 0");
  }
  return {*bath.q2_eq, *bath.p2_eq};
}

}  // namespace

std::pair<double, double> kg_thermal_diffusion(double gamma_q, double gamma_p,
                                               const BathSpec& bath, double M) {
  const auto [q2, p2] = require_bath(bath);
  const double D_q = gamma_q * q2 - p2 / (M * M);
  const double D_p = gamma_p * p2 / (M * M);
  return {D_q, D_p};
}

std::pair<double, double> drude_gammas(double alpha, double eta_d) {
  return {alpha * alpha + eta_d * eta_d, 2.0 * alpha};
}

KGCoefficients agarwal_coefficients(double kappa, double omega0,
                                    double temperature, double M,
                                    const PhysConstants& c) {
  if (kappa < 0.0) throw InvalidParameter("kappa must be >= 0");
  if (!(omega0 > 0.0)) throw InvalidParameter("omega0 must be > 0");
  const double coth = thermal_coth(omega0, temperature, c);
  // The damping term of the Agarwal equation is -(i kappa/hbar)[q,{p,rho}],
  // i.e. gamma_p = 2*kappa in the general form; D_p follows from the [q,[q,.]]
  // coefficient. This ratio D_p/gamma_p is what fixes the asymptotic state to
  // the ground state at T = 0.
  return KGCoefficients::constant(M, omega0 * omega0, 2.0 * kappa, 0.0,
                                  c.hbar * omega0 * kappa * coth / M, omega0);
}

KGCoefficients weak_coupling_kg(double K_c, double K_s, double gamma_c,
                                double gamma_s, double omega0, double M,
                                const PhysConstants& c) {
  if (!(omega0 > 0.0)) throw InvalidParameter("omega0 must be > 0");
  const double gamma_q = omega0 * omega0 + omega0 * gamma_s;
  const double D_q = -c.hbar * K_s / (M * M * omega0);
  const double D_p = c.hbar * K_c / (M * M);
  return KGCoefficients::constant(M, gamma_q, gamma_c, D_q, D_p, omega0);
}

std::pair<double, double> weidlich_haake_rates(double gamma_c, double omega0,
                                               double temperature,
                                               const PhysConstants& c) {
  if (gamma_c < 0.0) throw InvalidParameter("gamma_c must be >= 0");
  if (!(omega0 > 0.0)) throw InvalidParameter("omega0 must be > 0");
  const double coth = thermal_coth(omega0, temperature, c);
  return {0.25 * gamma_c * (coth + 1.0), 0.25 * gamma_c * (coth - 1.0)};
}

LindbladParams weidlich_haake_to_lindblad(double gamma_down, double gamma_up,
                                          double omega0, double M,
                                          const PhysConstants& c) {
  if (!(gamma_down >= gamma_up) || gamma_up < 0.0) {
    throw InvalidParameter("rates must satisfy gamma_down >= gamma_up >= 0");
  }
  const double sum = gamma_down + gamma_up;
  LindbladParams lp;
  lp.m = M;
  lp.omega = omega0;
  lp.lambda = gamma_down - gamma_up;
  lp.mu = 0.0;
  lp.D_pp = 0.5 * c.hbar * M * omega0 * sum;
  lp.D_qq = 0.5 * c.hbar * sum / (M * omega0);
  lp.D_pq = 0.0;
  return lp;
}

ConstraintCheck lindblad_constraint_check(const LindbladParams& lp,
                                          const PhysConstants& c,
                                          double rel_tol) {
  ConstraintCheck check;
  const double bound = 0.25 * c.hbar * c.hbar * lp.lambda * lp.lambda;
  check.residual = lp.D_pp * lp.D_qq - lp.D_pq * lp.D_pq - bound;
  const double scale = std::max(bound, std::abs(lp.D_pp * lp.D_qq));
  check.ok = lp.D_pp > 0.0 && lp.D_qq > 0.0 &&
             check.residual >= -rel_tol * std::max(scale, 1e-300);
  return check;
}

LindbladParams purity_preserving_diffusion(double lambda, double mu,
                                           double omega, double m,
                                           const PhysConstants& c) {
  if (!(m > 0.0)) throw InvalidParameter("m must be > 0");
  if (lambda < 0.0) throw InvalidParameter("lambda must be >= 0");
  if (!(omega > std::abs(mu))) {
    throw OverdampedRegime(
        "purity-preserving diffusion exists only for omega > |mu|");
  }
  const double Omega = std::sqrt(omega * omega - mu * mu);
  LindbladParams lp;
  lp.m = m;
  lp.omega = omega;
  lp.lambda = lambda;
  lp.mu = mu;
  lp.D_qq = c.hbar * lambda / (2.0 * m * Omega);
  lp.D_pp = c.hbar * lambda * m * omega * omega / (2.0 * Omega);
  lp.D_pq = -c.hbar * lambda * mu / (2.0 * Omega);
  return lp;
}

std::pair<std::complex<double>, std::complex<double>> lindblad_single_operator(
    const LindbladParams& lp, const PhysConstants& c) {
  if (!(lp.D_qq > 0.0)) throw InvalidParameter("D_qq must be > 0");
  const double k = std::sqrt(2.0 / (c.hbar * lp.D_qq));
  const std::complex<double> c_q(k * 0.5 * lp.lambda * c.hbar, -k * lp.D_pq);
  const std::complex<double> c_p(0.0, k * lp.D_qq);
  return {c_q, c_p};
}

KGCoefficients KGThermalModel::to_kg() const {
  const auto [q2, p2] = require_bath(bath);
  KGCoefficients kg;
  kg.M = M;
  kg.omega0 = omega0;
  kg.gamma_q = gamma_q;
  kg.gamma_p = gamma_p;
  const double mass = M;
  if (gamma_q.is_constant() && gamma_p.is_constant()) {
    const auto [D_q, D_p] = kg_thermal_diffusion(gamma_q.constant_value(),
                                                 gamma_p.constant_value(),
                                                 bath, M);
    kg.D_q = D_q;
    kg.D_p = D_p;
  } else {
    kg.D_q = CoefficientSource::time_function(
        [gq = gamma_q, q2 = q2, p2 = p2, mass](double t) {
          return gq(t) * q2 - p2 / (mass * mass);
        });
    kg.D_p = CoefficientSource::time_function(
        [gp = gamma_p, p2 = p2, mass](double t) {
          return gp(t) * p2 / (mass * mass);
        });
  }
  validate(kg);
  return kg;
}

KGCoefficients OhmicModel::to_kg() const {
  const auto [D_q, D_p] =
      kg_thermal_diffusion(omega0 * omega0, gamma, bath, M);
  KGCoefficients kg =
      KGCoefficients::constant(M, omega0 * omega0, gamma, D_q, D_p, omega0);
  kg.ohmic_regularized = true;
  return kg;
}

KGCoefficients DrudeModel::to_kg() const {
  const auto [gamma_q, gamma_p] = drude_gammas(alpha, eta);
  const auto [D_q, D_p] = kg_thermal_diffusion(gamma_q, gamma_p, bath, M);
  return KGCoefficients::constant(M, gamma_q, gamma_p, D_q, D_p, omega0);
}

KGCoefficients WeakCouplingModel::to_kg(const PhysConstants& c) const {
  return weak_coupling_kg(K_c, K_s, gamma_c, gamma_s, omega0, M, c);
}

KGCoefficients AgarwalModel::to_kg(const PhysConstants& c) const {
  return agarwal_coefficients(kappa, omega0, temperature, M, c);
}

LindbladParams WeidlichHaakeModel::to_lindblad(const PhysConstants& c) const {
  const auto [down, up] = weidlich_haake_rates(gamma_c, omega0, temperature, c);
  return weidlich_haake_to_lindblad(down, up, omega0, M, c);
}

EvolutionModel evolution_model(const ModelVariant& model,
                               const PhysConstants& c) {
  return std::visit(
      [&](const auto& m) -> EvolutionModel {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KGCoefficients>) {
          return m;
        } else if constexpr (std::is_same_v<T, LindbladParams>) {
          return m;
        } else if constexpr (std::is_same_v<T, WeidlichHaakeModel>) {
          return m.to_lindblad(c);
        } else if constexpr (std::is_same_v<T, WeakCouplingModel> ||
                             std::is_same_v<T, AgarwalModel>) {
          return m.to_kg(c);
        } else {
          return m.to_kg();
        }
      },
      model);
}

bool is_lindblad_family(const ModelVariant& model) {
  return std::holds_alternative<LindbladParams>(model) ||
         std::holds_alternative<WeidlichHaakeModel>(model);
}

std::string family_name(const ModelVariant& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KGCoefficients>) return "kg";
        if constexpr (std::is_same_v<T, KGThermalModel>) return "kg_thermal";
        if constexpr (std::is_same_v<T, OhmicModel>) return "ohmic";
        if constexpr (std::is_same_v<T, DrudeModel>) return "drude";
        if constexpr (std::is_same_v<T, WeakCouplingModel>)
          return "weak_coupling";
        if constexpr (std::is_same_v<T, AgarwalModel>) return "agarwal";
        if constexpr (std::is_same_v<T, WeidlichHaakeModel>)
          return "weidlich_haake";
        if constexpr (std::is_same_v<T, LindbladParams>) return "lindblad";
      },
      model);
}

bool is_constant(const ModelVariant& model, const PhysConstants& c) {
  const EvolutionModel evo = evolution_model(model, c);
  if (const auto* kg = std::get_if<KGCoefficients>(&evo)) {
    return kg->is_constant();
  }
  return true;
}

}  // namespace purosc
