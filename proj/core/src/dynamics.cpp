#include "purosc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "purosc/entropy.hpp"
#include "purosc/errors.hpp"
#include "purosc/purity.hpp"

namespace purosc {

namespace {

using Vec5 = std::array<double, 5>;

Vec5 pack(const GaussianState& s) {
  return {s.mean_q, s.mean_p, s.var_qq, s.var_pp, s.cov_pq};
}

GaussianState unpack(const Vec5& y) {
  return {y[0], y[1], y[2], y[3], y[4]};
}

Vec5 pack(const MomentDerivative& d) {
  return {d.d_mean_q, d.d_mean_p, d.d_var_qq, d.d_var_pp, d.d_cov_pq};
}

Vec5 rhs(const EvolutionModel& model, double t, const Vec5& y) {
  const GaussianState s = unpack(y);
  if (const auto* kg = std::get_if<KGCoefficients>(&model)) {
    return pack(kg_moment_derivatives(s, *kg, t));
  }
  return pack(lindblad_moment_derivatives(s, std::get<LindbladParams>(model)));
}

double default_step(const EvolutionModel& model, double t0) {
  // ~200 steps per fastest period of the moment system.
  double rate = 1.0;
  if (const auto* kg = std::get_if<KGCoefficients>(&model)) {
    const double gq = std::abs(kg->gamma_q(t0));
    const double gp = std::abs(kg->gamma_p(t0));
    rate = gp + std::sqrt(4.0 * gq + gp * gp);
  } else {
    const auto& lp = std::get<LindbladParams>(model);
    rate = 2.0 * lp.lambda + 2.0 * lp.omega + 2.0 * std::abs(lp.mu);
  }
  rate = std::max(rate, 1e-12);
  return 2.0 * std::numbers::pi / rate / 200.0;
}

Vec5 rk4_step(const EvolutionModel& model, double t, const Vec5& y, double h) {
  const Vec5 k1 = rhs(model, t, y);
  Vec5 ytmp;
  for (int i = 0; i < 5; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
  const Vec5 k2 = rhs(model, t + 0.5 * h, ytmp);
  for (int i = 0; i < 5; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
  const Vec5 k3 = rhs(model, t + 0.5 * h, ytmp);
  for (int i = 0; i < 5; ++i) ytmp[i] = y[i] + h * k3[i];
  const Vec5 k4 = rhs(model, t + h, ytmp);
  Vec5 out;
  for (int i = 0; i < 5; ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

// Dormand-Prince 5(4) pair.
struct Dopri45Result {
  Vec5 y5;
  double err_norm;
};

Dopri45Result dopri45_step(const EvolutionModel& model, double t,
                           const Vec5& y, double h, double rel_tol) {
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0,
                          a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                          a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0,
                          b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                          b6 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                          e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                          e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  const Vec5 k1 = rhs(model, t, y);
  Vec5 w;
  for (int i = 0; i < 5; ++i) w[i] = y[i] + h * a21 * k1[i];
  const Vec5 k2 = rhs(model, t + h / 5.0, w);
  for (int i = 0; i < 5; ++i) w[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  const Vec5 k3 = rhs(model, t + 3.0 * h / 10.0, w);
  for (int i = 0; i < 5; ++i) {
    w[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  }
  const Vec5 k4 = rhs(model, t + 4.0 * h / 5.0, w);
  for (int i = 0; i < 5; ++i) {
    w[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  }
  const Vec5 k5 = rhs(model, t + 8.0 * h / 9.0, w);
  for (int i = 0; i < 5; ++i) {
    w[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                       a65 * k5[i]);
  }
  const Vec5 k6 = rhs(model, t + h, w);
  Dopri45Result out;
  for (int i = 0; i < 5; ++i) {
    out.y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
  }
  const Vec5 k7 = rhs(model, t + h, out.y5);
  double norm2 = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
    const double scale =
        rel_tol * (1.0 + std::max(std::abs(y[i]), std::abs(out.y5[i])));
    norm2 += (err / scale) * (err / scale);
  }
  out.err_norm = std::sqrt(norm2 / 5.0);
  return out;
}

// Advances y from t0 to t1 with adaptive steps; h_inout persists across
// segments.
Vec5 dopri45_advance(const EvolutionModel& model, Vec5 y, double t0, double t1,
                     double rel_tol, double& h_inout) {
  double t = t0;
  double h = h_inout;
  const double span = t1 - t0;
  const double h_min = std::max(span * 1e-14, 1e-300);
  int consecutive_rejects = 0;
  while (t < t1) {
    h = std::min(h, t1 - t);
    const Dopri45Result step = dopri45_step(model, t, y, h, rel_tol);
    if (step.err_norm <= 1.0) {
      t += h;
      y = step.y5;
      consecutive_rejects = 0;
      const double grow =
          step.err_norm > 0.0
              ? std::min(5.0, 0.9 * std::pow(step.err_norm, -0.2))
              : 5.0;
      h *= grow;
      h_inout = h;
    } else {
      ++consecutive_rejects;
      h *= std::max(0.2, 0.9 * std::pow(step.err_norm, -0.2));
      if (h < h_min || consecutive_rejects > 50) {
        std::ostringstream msg;
        msg << "rk45 step size underflow at t = " << t;
        throw StepRejected(msg.str());
      }
    }
  }
  return y;
}

// Diagnostics must not throw on slightly inadmissible states when the
// admissibility check is disabled; reuse the clamped nu where defined.
SampleDiagnostics make_diagnostics(const GaussianState& s,
                                   const ModelVariant& model, double t,
                                   const PhysConstants& c) {
  SampleDiagnostics d;
  const double sigma = sigma_det(s);
  const double nu_raw = 2.0 * std::sqrt(std::max(sigma, 0.0)) / c.hbar;
  d.nu = std::max(1.0, nu_raw);
  d.linear_entropy = 1.0 - 1.0 / d.nu;
  if (d.nu > 1.0) {
    const double a = 0.5 * (d.nu + 1.0);
    const double b = 0.5 * (d.nu - 1.0);
    d.vn_entropy = a * std::log(a) - b * std::log(b);
  }
  d.purity_residual = purity_residual(s, model, t, c);
  d.entropy_rate = model_entropy_rate(s, model, t, c);
  d.fluct_energy = fluctuation_energy(s, model, c);
  d.total_energy = total_energy(s, model, c);
  return d;
}

struct FParts {
  double c0;  ///< cos(Omega t) continued across branches
  double f1;  ///< (cos(Omega t) - 1) / Omega^2
  double f2;  ///< sin(Omega t) / Omega
};

// Stable in all three branches of Omega^2 = 4 gamma_q - gamma_p^2; the series
// kicks in when |Omega^2| t^2 < 1e-6 where the closed forms would cancel.
FParts f_parts(double omega2, double t) {
  const double x2 = omega2 * t * t;
  FParts f;
  if (std::abs(x2) < 1e-6) {
    f.f1 = -(t * t / 2.0) * (1.0 - x2 / 12.0 + x2 * x2 / 360.0);
    f.f2 = t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    f.c0 = 1.0 + omega2 * f.f1;
  } else if (omega2 > 0.0) {
    const double w = std::sqrt(omega2);
    const double sh = std::sin(0.5 * w * t);
    f.c0 = std::cos(w * t);
    f.f1 = -2.0 * sh * sh / omega2;
    f.f2 = std::sin(w * t) / w;
  } else {
    const double w = std::sqrt(-omega2);
    const double sh = std::sinh(0.5 * w * t);
    f.c0 = std::cosh(w * t);
    f.f1 = 2.0 * sh * sh / omega2;
    f.f2 = std::sinh(w * t) / w;
  }
  return f;
}

}  // namespace

std::vector<double> linspace(double t0, double t1, int n) {
  if (n < 2) throw InvalidParameter("linspace needs n >= 2");
  if (!(t1 > t0)) throw InvalidParameter("linspace needs t1 > t0");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double h = (t1 - t0) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = t0 + h * i;
  out.back() = t1;
  return out;
}

MomentDerivative kg_moment_derivatives(const GaussianState& s,
                                       const KGCoefficients& kg, double t) {
  const double gq = kg.gamma_q(t);
  const double gp = kg.gamma_p(t);
  const double Dq = kg.D_q(t);
  const double Dp = kg.D_p(t);
  const double M = kg.M;
  MomentDerivative d;
  d.d_mean_q = s.mean_p / M;
  d.d_mean_p = -M * gq * s.mean_q - gp * s.mean_p;
  d.d_var_qq = 2.0 * s.cov_pq / M;
  d.d_var_pp = -2.0 * gp * s.var_pp - 2.0 * M * gq * s.cov_pq + 2.0 * M * M * Dp;
  d.d_cov_pq = -M * gq * s.var_qq + s.var_pp / M - gp * s.cov_pq + M * Dq;
  return d;
}

MomentDerivative lindblad_moment_derivatives(const GaussianState& s,
                                             const LindbladParams& lp) {
  const double lm = lp.lambda - lp.mu;
  const double lpm = lp.lambda + lp.mu;
  const double mw2 = lp.m * lp.omega * lp.omega;
  MomentDerivative d;
  d.d_mean_q = s.mean_p / lp.m - lm * s.mean_q;
  d.d_mean_p = -mw2 * s.mean_q - lpm * s.mean_p;
  d.d_var_qq = -2.0 * lm * s.var_qq + 2.0 * s.cov_pq / lp.m + 2.0 * lp.D_qq;
  d.d_var_pp = -2.0 * lpm * s.var_pp - 2.0 * mw2 * s.cov_pq + 2.0 * lp.D_pp;
  d.d_cov_pq = -2.0 * lp.lambda * s.cov_pq + s.var_pp / lp.m -
               mw2 * s.var_qq + 2.0 * lp.D_pq;
  return d;
}

Trajectory integrate(const ModelVariant& model, const GaussianState& initial,
                     std::span<const double> t_grid,
                     const IntegratorOptions& opts, const PhysConstants& c) {
  if (t_grid.size() < 2) throw InvalidParameter("t_grid needs >= 2 samples");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw InvalidParameter("t_grid must be strictly increasing");
    }
  }
  const EvolutionModel evo = evolution_model(model, c);
  if (const auto* kg = std::get_if<KGCoefficients>(&evo)) {
    validate(*kg);
  } else {
    validate(std::get<LindbladParams>(evo));
  }

  Trajectory traj;
  traj.times.reserve(t_grid.size());
  traj.states.reserve(t_grid.size());
  traj.diagnostics.reserve(t_grid.size());

  auto record = [&](double t, const Vec5& y) {
    const GaussianState s = unpack(y);
    if (opts.check_admissibility &&
        !is_admissible(s, c, opts.admissibility_rel_tol)) {
      std::ostringstream msg;
      msg << "state left the admissible region at t = " << t
          << " (sigma = " << sigma_det(s) << ")";
      throw AdmissibilityLost(msg.str());
    }
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.diagnostics.push_back(make_diagnostics(s, model, t, c));
  };

  Vec5 y = pack(initial);
  record(t_grid[0], y);

  const double dt_fixed = opts.dt.value_or(default_step(evo, t_grid[0]));
  if (!(dt_fixed > 0.0)) throw InvalidParameter("dt must be > 0");
  double h_adaptive = dt_fixed;

  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double t0 = t_grid[k - 1];
    const double t1 = t_grid[k];
    if (opts.method == IntegratorOptions::Method::rk4) {
      const double span = t1 - t0;
      const int n = std::max(1, static_cast<int>(std::ceil(span / dt_fixed)));
      const double h = span / n;
      double t = t0;
      for (int i = 0; i < n; ++i) {
        y = rk4_step(evo, t, y, h);
        t = t0 + (i + 1) * h;
      }
    } else {
      y = dopri45_advance(evo, y, t0, t1, opts.rel_tol, h_adaptive);
    }
    record(t1, y);
  }
  return traj;
}

std::array<std::array<double, 3>, 3> kg_propagator_matrix(
    const KGCoefficients& kg, double t) {
  if (!kg.is_constant()) {
    throw ConstantCoefficientsRequired(
        "analytic propagator needs constant coefficients");
  }
  validate(kg);
  const double gq = kg.gamma_q.constant_value();
  const double gp = kg.gamma_p.constant_value();
  const double omega2 = 4.0 * gq - gp * gp;
  const FParts f = f_parts(omega2, t);
  const double E = std::exp(-gp * t);
  const double sq = std::sqrt(gq);
  const double gpf1_m = gp * f.f1 - f.f2;
  const double gpf1_p = gp * f.f1 + f.f2;
  std::array<std::array<double, 3>, 3> T;
  T[0][0] = -2.0 * E * (gq * f.f1 - 0.5 * f.c0 - 0.5 * gp * f.f2);
  T[0][1] = -2.0 * E * gq * f.f1;
  T[0][2] = -2.0 * E * sq * gpf1_m;
  T[1][0] = T[0][1];
  T[1][1] = -2.0 * E * (gq * f.f1 - 0.5 * f.c0 + 0.5 * gp * f.f2);
  T[1][2] = -2.0 * E * sq * gpf1_p;
  T[2][0] = E * sq * gpf1_m;
  T[2][1] = E * sq * gpf1_p;
  T[2][2] = E * (4.0 * gq * f.f1 + 1.0);
  return T;
}

SecondMoments kg_asymptotic_variances(const KGCoefficients& kg) {
  if (!kg.is_constant()) {
    throw ConstantCoefficientsRequired(
        "asymptotic variances need constant coefficients");
  }
  validate(kg);
  const double gq = kg.gamma_q.constant_value();
  const double gp = kg.gamma_p.constant_value();
  if (!(gp > 0.0)) {
    throw UndampedModel("gamma_p = 0: no asymptotic state");
  }
  const double Dq = kg.D_q.constant_value();
  const double Dp = kg.D_p.constant_value();
  SecondMoments m;
  m.var_qq = (Dp + gp * Dq) / (gp * gq);
  m.var_pp = kg.M * kg.M * Dp / gp;
  m.cov_pq = 0.0;
  return m;
}

PropagatorKG kg_analytic_propagator(const KGCoefficients& kg, double t) {
  PropagatorKG prop;
  prop.T = kg_propagator_matrix(kg, t);
  const SecondMoments inf = kg_asymptotic_variances(kg);
  const double scale = kg.M * std::sqrt(kg.gamma_q.constant_value());
  prop.x_scale = scale;
  prop.x_inf = {scale * inf.var_qq, inf.var_pp / scale, inf.cov_pq};
  return prop;
}

GaussianState PropagatorKG::apply(const GaussianState& initial) const {
  const std::array<double, 3> x0 = {x_scale * initial.var_qq,
                                    initial.var_pp / x_scale,
                                    initial.cov_pq};
  std::array<double, 3> x{};
  for (int i = 0; i < 3; ++i) {
    double acc = x_inf[i];
    for (int j = 0; j < 3; ++j) acc += T[i][j] * (x0[j] - x_inf[j]);
    x[i] = acc;
  }
  GaussianState out = initial;
  out.var_qq = x[0] / x_scale;
  out.var_pp = x[1] * x_scale;
  out.cov_pq = x[2];
  return out;
}

namespace {

// Second-moment drift matrix of the Lindblad equations, (qq, pp, pq) order.
std::array<std::array<double, 3>, 3> lindblad_drift(const LindbladParams& lp) {
  const double mw2 = lp.m * lp.omega * lp.omega;
  return {{{-2.0 * (lp.lambda - lp.mu), 0.0, 2.0 / lp.m},
           {0.0, -2.0 * (lp.lambda + lp.mu), -2.0 * mw2},
           {-mw2, 1.0 / lp.m, -2.0 * lp.lambda}}};
}

bool is_hurwitz(const std::array<std::array<double, 3>, 3>& A) {
  // Routh-Hurwitz on det(sI - A) = s^3 + c2 s^2 + c1 s + c0.
  const double c2 = -(A[0][0] + A[1][1] + A[2][2]);
  const double m01 = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  const double m02 = A[0][0] * A[2][2] - A[0][2] * A[2][0];
  const double m12 = A[1][1] * A[2][2] - A[1][2] * A[2][1];
  const double c1 = m01 + m02 + m12;
  const double det =
      A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
      A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
      A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
  const double c0 = -det;
  return c2 > 0.0 && c0 > 0.0 && c2 * c1 > c0;
}

std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> A,
                             std::array<double, 3> b) {
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
    }
    if (A[pivot][col] == 0.0) throw NoSteadyState("singular drift matrix");
    std::swap(A[col], A[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = A[r][col] / A[col][col];
      for (int k = col; k < 3; ++k) A[r][k] -= f * A[col][k];
      b[r] -= f * b[col];
    }
  }
  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double acc = b[r];
    for (int k = r + 1; k < 3; ++k) acc -= A[r][k] * x[k];
    x[r] = acc / A[r][r];
  }
  return x;
}

}  // namespace

GaussianState lindblad_steady_state(const LindbladParams& lp) {
  validate(lp);
  if (!(lp.lambda > 0.0)) {
    throw NoSteadyState("lambda = 0: no relaxation to a steady state");
  }
  const auto A = lindblad_drift(lp);
  if (!is_hurwitz(A)) {
    throw NoSteadyState("second-moment drift matrix is not Hurwitz");
  }
  const std::array<double, 3> b = {-2.0 * lp.D_qq, -2.0 * lp.D_pp,
                                   -2.0 * lp.D_pq};
  const auto x = solve3(A, b);
  GaussianState s;
  s.var_qq = x[0];
  s.var_pp = x[1];
  s.cov_pq = x[2];
  return s;
}

namespace {

double quadratic_form_energy(const EvolutionModel& evo, double qq, double pp,
                             double pq) {
  if (const auto* kg = std::get_if<KGCoefficients>(&evo)) {
    return 0.5 * pp / kg->M + 0.5 * kg->M * kg->omega0 * kg->omega0 * qq;
  }
  const auto& lp = std::get<LindbladParams>(evo);
  return 0.5 * pp / lp.m + 0.5 * lp.m * lp.omega * lp.omega * qq +
         lp.mu * pq;
}

}  // namespace

double fluctuation_energy(const GaussianState& s, const ModelVariant& model,
                          const PhysConstants& c) {
  const EvolutionModel evo = evolution_model(model, c);
  return quadratic_form_energy(evo, s.var_qq, s.var_pp, s.cov_pq);
}

double total_energy(const GaussianState& s, const ModelVariant& model,
                    const PhysConstants& c) {
  const EvolutionModel evo = evolution_model(model, c);
  return quadratic_form_energy(evo, s.var_qq, s.var_pp, s.cov_pq) +
         quadratic_form_energy(evo, s.mean_q * s.mean_q, s.mean_p * s.mean_p,
                               s.mean_q * s.mean_p);
}

}  // namespace purosc
