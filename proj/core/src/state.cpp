#include "purosc/state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "purosc/errors.hpp"

namespace purosc {

namespace {

double uncertainty_floor(const PhysConstants& c) {
  return 0.25 * c.hbar * c.hbar;
}

}  // namespace

void validate(const PhysConstants& c) {
  if (!(c.hbar > 0.0)) throw InvalidParameter("hbar must be > 0");
  if (!(c.k_B > 0.0)) throw InvalidParameter("k_B must be > 0");
}

double sigma_det(const GaussianState& s) {
  return s.var_qq * s.var_pp - s.cov_pq * s.cov_pq;
}

bool is_admissible(const GaussianState& s, const PhysConstants& c,
                   double rel_tol) {
  return sigma_det(s) >= uncertainty_floor(c) * (1.0 - rel_tol);
}

double purity_nu(const GaussianState& s, const PhysConstants& c) {
  const double floor = uncertainty_floor(c);
  const double sigma = sigma_det(s);
  if (sigma < floor * (1.0 - kPurityRelTol)) {
    std::ostringstream msg;
    msg << "uncertainty relation violated: sigma = " << sigma
        << " < hbar^2/4 = " << floor;
    throw UncertaintyViolation(msg.str());
  }
  return std::max(1.0, 2.0 * std::sqrt(std::max(sigma, 0.0)) / c.hbar);
}

double linear_entropy(const GaussianState& s, const PhysConstants& c) {
  return 1.0 - 1.0 / purity_nu(s, c);
}

double von_neumann_entropy(const GaussianState& s, const PhysConstants& c) {
  const double nu = purity_nu(s, c);
  if (nu <= 1.0) return 0.0;  // x ln x -> 0 limit at the pure boundary
  const double a = 0.5 * (nu + 1.0);
  const double b = 0.5 * (nu - 1.0);
  return a * std::log(a) - b * std::log(b);
}

double correlation_coefficient(const GaussianState& s) {
  if (!(s.var_qq > 0.0) || !(s.var_pp > 0.0)) {
    throw DegenerateState("correlation coefficient needs var_qq, var_pp > 0");
  }
  return s.cov_pq / std::sqrt(s.var_qq * s.var_pp);
}

UncertaintyClass classify_uncertainty(const GaussianState& s,
                                      const PhysConstants& c, double rel_tol) {
  const double floor = uncertainty_floor(c);
  const double sigma = sigma_det(s);
  if (sigma < floor * (1.0 - rel_tol)) return UncertaintyClass::Violating;
  if (sigma <= floor * (1.0 + rel_tol)) return UncertaintyClass::PureBoundary;
  return UncertaintyClass::Mixed;
}

double wigner_eval(const GaussianState& s, double p, double q) {
  const double sigma = sigma_det(s);
  if (!(sigma > 0.0)) throw DegenerateState("wigner_eval needs sigma > 0");
  const double dq = q - s.mean_q;
  const double dp = p - s.mean_p;
  const double quad =
      s.var_pp * dq * dq + s.var_qq * dp * dp - 2.0 * s.cov_pq * dq * dp;
  return std::exp(-quad / (2.0 * sigma)) /
         (2.0 * std::numbers::pi * std::sqrt(sigma));
}

std::complex<double> density_matrix_eval(const GaussianState& s, double x,
                                         double y, const PhysConstants& c) {
  if (!(s.var_qq > 0.0)) throw DegenerateState("<x|rho|y> needs var_qq > 0");
  const double hbar = c.hbar;
  const double u = 0.5 * (x + y) - s.mean_q;  // centered midpoint
  const double v = x - y;                     // off-diagonal separation
  const double schmidt = s.var_pp - s.cov_pq * s.cov_pq / s.var_qq;
  const double re = -u * u / (2.0 * s.var_qq) -
                    schmidt * v * v / (2.0 * hbar * hbar);
  const double im = s.cov_pq * u * v / (hbar * s.var_qq) + s.mean_p * v / hbar;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * s.var_qq);
  return norm * std::exp(std::complex<double>(re, im));
}

GaussianState ccs_state(double r, double eta, double mean_q, double mean_p,
                        const PhysConstants& c) {
  if (!(std::abs(r) < 1.0)) {
    throw InvalidParameter("correlation coefficient must satisfy |r| < 1");
  }
  if (!(eta > 0.0)) throw InvalidParameter("eta must be > 0");
  const double one_m_r2 = 1.0 - r * r;
  GaussianState s;
  s.mean_q = mean_q;
  s.mean_p = mean_p;
  s.var_qq = eta * eta;
  s.var_pp = c.hbar * c.hbar / (4.0 * eta * eta * one_m_r2);
  s.cov_pq = c.hbar * r / (2.0 * std::sqrt(one_m_r2));
  return s;
}

}  // namespace purosc
