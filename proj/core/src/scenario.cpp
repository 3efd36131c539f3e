#include "purosc/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "purosc/errors.hpp"
#include "purosc/expr.hpp"

namespace purosc {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw ParseError("config" + where + ": " + what);
}

[[noreturn]] void validation_fail(const std::string& where,
                                  const std::string& what) {
  throw ValidationError("config" + where + ": " + what);
}

const json& require_field(const json& obj, const std::string& where,
                          const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) {
    parse_fail(where, "missing required field '" + key + "'");
  }
  return obj.at(key);
}

double require_number(const json& obj, const std::string& where,
                      const std::string& key) {
  const json& v = require_field(obj, where, key);
  if (!v.is_number()) parse_fail(where + "/" + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& where,
                 const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) parse_fail(where + "/" + key, "expected a number");
  return v.get<double>();
}

int require_int(const json& obj, const std::string& where,
                const std::string& key) {
  const json& v = require_field(obj, where, key);
  if (!v.is_number_integer()) parse_fail(where + "/" + key, "expected an integer");
  return v.get<int>();
}

/// A coefficient field: number, or string holding an expression in t.
CoefficientSource require_coefficient(const json& obj, const std::string& where,
                                      const std::string& key) {
  const json& v = require_field(obj, where, key);
  if (v.is_number()) return CoefficientSource(v.get<double>());
  if (v.is_string()) {
    try {
      return CoefficientSource::time_function(
          parse_time_expr(v.get<std::string>()));
    } catch (const ParseError& e) {
      parse_fail(where + "/" + key, e.what());
    }
  }
  parse_fail(where + "/" + key, "expected a number or an expression string");
}

BathSpec parse_bath(const json& m, const std::string& where) {
  BathSpec bath;
  bath.temperature = number_or(m, where, "temperature", 0.0);
  if (m.contains("q2_eq")) bath.q2_eq = require_number(m, where, "q2_eq");
  if (m.contains("p2_eq")) bath.p2_eq = require_number(m, where, "p2_eq");
  if (!bath.q2_eq || !bath.p2_eq) {
    validation_fail(where, "equilibrium variances q2_eq, p2_eq are required "
                           "for this family (bath data)");
  }
  if (!(*bath.q2_eq > 0.0) || !(*bath.p2_eq > 0.0)) {
    validation_fail(where, "q2_eq and p2_eq must be > 0");
  }
  return bath;
}

ModelVariant parse_model(const json& m, const PhysConstants& c) {
  const std::string where = "/model";
  if (!m.is_object()) parse_fail(where, "expected an object");
  const json& fam_field = require_field(m, where, "family");
  if (!fam_field.is_string()) parse_fail(where + "/family", "expected a string");
  const std::string family = fam_field.get<std::string>();

  try {
    if (family == "kg") {
      KGCoefficients kg;
      kg.M = number_or(m, where, "M", 1.0);
      kg.omega0 = number_or(m, where, "omega0", 1.0);
      kg.gamma_q = require_coefficient(m, where, "gamma_q");
      kg.gamma_p = require_coefficient(m, where, "gamma_p");
      kg.D_q = require_coefficient(m, where, "D_q");
      kg.D_p = require_coefficient(m, where, "D_p");
      validate(kg);
      return kg;
    }
    if (family == "kg_thermal") {
      KGThermalModel model;
      model.M = number_or(m, where, "M", 1.0);
      model.omega0 = number_or(m, where, "omega0", 1.0);
      model.gamma_q = require_coefficient(m, where, "gamma_q");
      model.gamma_p = require_coefficient(m, where, "gamma_p");
      model.bath = parse_bath(m, where);
      validate(model.to_kg());
      return model;
    }
    if (family == "ohmic") {
      OhmicModel model;
      model.M = number_or(m, where, "M", 1.0);
      model.gamma = require_number(m, where, "gamma");
      model.omega0 = require_number(m, where, "omega0");
      model.bath = parse_bath(m, where);
      validate(model.to_kg());
      return model;
    }
    if (family == "drude") {
      DrudeModel model;
      model.M = number_or(m, where, "M", 1.0);
      model.alpha = require_number(m, where, "alpha");
      model.eta = require_number(m, where, "eta");
      model.omega0 = number_or(m, where, "omega0",
                               std::sqrt(model.alpha * model.alpha +
                                         model.eta * model.eta));
      model.bath = parse_bath(m, where);
      validate(model.to_kg());
      return model;
    }
    if (family == "weak_coupling") {
      WeakCouplingModel model;
      model.M = number_or(m, where, "M", 1.0);
      model.omega0 = require_number(m, where, "omega0");
      model.K_c = require_number(m, where, "K_c");
      model.K_s = require_number(m, where, "K_s");
      model.gamma_c = require_number(m, where, "gamma_c");
      model.gamma_s = number_or(m, where, "gamma_s", 0.0);
      validate(model.to_kg(c));
      return model;
    }
    if (family == "agarwal") {
      AgarwalModel model;
      model.M = number_or(m, where, "M", 1.0);
      model.omega0 = require_number(m, where, "omega0");
      model.kappa = require_number(m, where, "kappa");
      model.temperature = number_or(m, where, "temperature", 0.0);
      validate(model.to_kg(c));
      return model;
    }
    if (family == "weidlich_haake") {
      WeidlichHaakeModel model;
      model.M = number_or(m, where, "M", 1.0);
      model.omega0 = require_number(m, where, "omega0");
      model.gamma_c = require_number(m, where, "gamma_c");
      model.temperature = number_or(m, where, "temperature", 0.0);
      validate(model.to_lindblad(c));
      return model;
    }
    if (family == "lindblad" || family == "lindblad_coepur") {
      const double mass = number_or(m, where, "m", 1.0);
      const double omega = require_number(m, where, "omega");
      const double lambda = require_number(m, where, "lambda");
      const double mu = number_or(m, where, "mu", 0.0);
      if (family == "lindblad_coepur") {
        if (!(omega > std::abs(mu))) {
          validation_fail(where,
                          "purity-preserving coefficients need omega > |mu| "
                          "(underdamped regime)");
        }
        return purity_preserving_diffusion(lambda, mu, omega, mass, c);
      }
      LindbladParams lp;
      lp.m = mass;
      lp.omega = omega;
      lp.lambda = lambda;
      lp.mu = mu;
      lp.D_pp = require_number(m, where, "D_pp");
      lp.D_qq = require_number(m, where, "D_qq");
      lp.D_pq = number_or(m, where, "D_pq", 0.0);
      validate(lp);
      const ConstraintCheck check = lindblad_constraint_check(lp, c);
      if (!check.ok) {
        std::ostringstream msg;
        msg << "diffusion matrix violates the fundamental constraint (ineq): "
            << "D_pp*D_qq - D_pq^2 - hbar^2*lambda^2/4 = " << check.residual
            << " < 0";
        validation_fail(where, msg.str());
      }
      return lp;
    }
  } catch (const InvalidParameter& e) {
    validation_fail(where, e.what());
  } catch (const MissingBathData& e) {
    validation_fail(where, e.what());
  } catch (const OverdampedRegime& e) {
    validation_fail(where, e.what());
  }
  throw UnknownVariant("config/model/family: unknown family '" + family + "'");
}

InitialStateSpec parse_initial(const json& doc) {
  if (!doc.contains("initial_state")) return AutoInitialTag{};
  const json& s = doc.at("initial_state");
  const std::string where = "/initial_state";
  if (!s.is_object()) parse_fail(where, "expected an object");
  const json& kind_field = require_field(s, where, "kind");
  if (!kind_field.is_string()) parse_fail(where + "/kind", "expected a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "auto") return AutoInitialTag{};
  if (kind == "moments") {
    GaussianState st;
    st.mean_q = number_or(s, where, "mean_q", 0.0);
    st.mean_p = number_or(s, where, "mean_p", 0.0);
    st.var_qq = require_number(s, where, "var_qq");
    st.var_pp = require_number(s, where, "var_pp");
    st.cov_pq = number_or(s, where, "cov_pq", 0.0);
    if (!(st.var_qq > 0.0) || !(st.var_pp > 0.0)) {
      validation_fail(where, "var_qq and var_pp must be > 0");
    }
    return st;
  }
  if (kind == "ccs") {
    CcsInitialSpec spec;
    spec.r = number_or(s, where, "r", 0.0);
    spec.eta = require_number(s, where, "eta");
    spec.mean_q = number_or(s, where, "mean_q", 0.0);
    spec.mean_p = number_or(s, where, "mean_p", 0.0);
    if (!(std::abs(spec.r) < 1.0)) validation_fail(where, "ccs needs |r| < 1");
    if (!(spec.eta > 0.0)) validation_fail(where, "ccs needs eta > 0");
    return spec;
  }
  parse_fail(where + "/kind", "expected 'moments', 'ccs', or 'auto'");
}

IntegratorOptions parse_integrator(const json& doc) {
  IntegratorOptions opts;
  if (!doc.contains("integrator")) return opts;
  const json& s = doc.at("integrator");
  const std::string where = "/integrator";
  if (!s.is_object()) parse_fail(where, "expected an object");
  const std::string method =
      s.contains("method") ? require_field(s, where, "method").get<std::string>()
                           : "rk4";
  if (method == "rk4") {
    opts.method = IntegratorOptions::Method::rk4;
    if (s.contains("dt")) {
      const double dt = require_number(s, where, "dt");
      if (!(dt > 0.0)) validation_fail(where, "dt must be > 0");
      opts.dt = dt;
    }
  } else if (method == "rk45") {
    opts.method = IntegratorOptions::Method::rk45;
    opts.rel_tol = number_or(s, where, "rel_tol", 1e-9);
    if (!(opts.rel_tol > 0.0)) validation_fail(where, "rel_tol must be > 0");
  } else {
    parse_fail(where + "/method", "expected 'rk4' or 'rk45'");
  }
  return opts;
}

OutputSelection parse_outputs(const json& doc) {
  OutputSelection sel;
  if (!doc.contains("outputs")) return sel;
  const json& arr = doc.at("outputs");
  if (!arr.is_array()) parse_fail("/outputs", "expected an array of strings");
  sel = OutputSelection{false, false, false, false};
  for (const json& item : arr) {
    if (!item.is_string()) parse_fail("/outputs", "expected strings");
    const std::string s = item.get<std::string>();
    if (s == "trajectory_csv") {
      sel.trajectory_csv = true;
    } else if (s == "purity_report") {
      sel.purity_report = true;
    } else if (s == "entropy_audit") {
      sel.entropy_audit = true;
    } else if (s == "summary") {
      sel.summary = true;
    } else {
      parse_fail("/outputs", "unknown output '" + s + "'");
    }
  }
  return sel;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // Convert the byte offset into a line:column anchor.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < json_text.size(); ++i) {
      if (json_text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << "config:" << line << ":" << col << ": " << e.what();
    throw ParseError(msg.str());
  }
  if (!doc.is_object()) parse_fail("", "top level must be an object");

  ScenarioConfig cfg;
  if (doc.contains("name")) {
    const json& n = doc.at("name");
    if (!n.is_string()) parse_fail("/name", "expected a string");
    cfg.name = n.get<std::string>();
  }
  if (doc.contains("constants")) {
    const json& k = doc.at("constants");
    cfg.constants.hbar = number_or(k, "/constants", "hbar", 1.0);
    cfg.constants.k_B = number_or(k, "/constants", "k_B", 1.0);
    try {
      validate(cfg.constants);
    } catch (const InvalidParameter& e) {
      validation_fail("/constants", e.what());
    }
  }

  cfg.model = parse_model(require_field(doc, "", "model"), cfg.constants);
  cfg.initial = parse_initial(doc);

  const json& time = require_field(doc, "", "time");
  cfg.time.t_end = require_number(time, "/time", "t_end");
  cfg.time.sample_count = require_int(time, "/time", "sample_count");
  if (!(cfg.time.t_end > 0.0)) validation_fail("/time", "t_end must be > 0");
  if (cfg.time.sample_count < 2) {
    validation_fail("/time", "sample_count must be >= 2");
  }

  cfg.integrator = parse_integrator(doc);
  cfg.outputs = parse_outputs(doc);

  if (std::holds_alternative<AutoInitialTag>(cfg.initial) &&
      !is_constant(cfg.model, cfg.constants)) {
    validation_fail("/initial_state",
                    "auto initial state requires constant coefficients");
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOFailure("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IOFailure("read failure on " + path.string());
  ScenarioConfig cfg = parse_config(buf.str());
  if (cfg.name == "scenario") cfg.name = path.stem().string();
  return cfg;
}

GaussianState resolve_initial_state(const ScenarioConfig& cfg) {
  if (const auto* st = std::get_if<GaussianState>(&cfg.initial)) return *st;
  if (const auto* ccs = std::get_if<CcsInitialSpec>(&cfg.initial)) {
    return ccs_state(ccs->r, ccs->eta, ccs->mean_q, ccs->mean_p,
                     cfg.constants);
  }
  const auto state = purity_preserving_initial_state(cfg.model, cfg.constants);
  if (!state) {
    throw ValidationError(
        "initial_state 'auto': no purity-preserving initial state exists for "
        "this model");
  }
  return *state;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult result;
  result.initial_state = resolve_initial_state(cfg);
  const std::vector<double> grid =
      linspace(0.0, cfg.time.t_end, cfg.time.sample_count);
  result.trajectory = integrate(cfg.model, result.initial_state, grid,
                                cfg.integrator, cfg.constants);
  result.purity = audit_purity(result.trajectory, cfg.model, cfg.constants);
  result.entropy = rate_fd_audit(result.trajectory, cfg.model, cfg.constants);
  result.summary_text = render_summary(cfg, result);
  return result;
}

std::string emit_trajectory_csv(const Trajectory& traj) {
  std::string out;
  out.reserve(traj.size() * 280 + 128);
  out +=
      "t,mean_q,mean_p,var_qq,var_pp,cov_pq,sigma_det,nu,S_l,S,"
      "purity_residual,entropy_rate,E_fluct,E_total\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const GaussianState& s = traj.states[k];
    const SampleDiagnostics& d = traj.diagnostics[k];
    out += fmt(traj.times[k]);
    for (double v : {s.mean_q, s.mean_p, s.var_qq, s.var_pp, s.cov_pq,
                     sigma_det(s), d.nu, d.linear_entropy, d.vn_entropy,
                     d.purity_residual, d.entropy_rate, d.fluct_energy,
                     d.total_energy}) {
      out += ',';
      out += fmt(v);
    }
    out += '\n';
  }
  return out;
}

std::string emit_entropy_audit_csv(const EntropyAudit& audit) {
  std::string out = "t,rate_formula,rate_fd,gap\n";
  for (const EntropyRateRecord& rec : audit.records) {
    out += fmt(rec.t);
    out += ',';
    out += fmt(rec.rate_formula);
    out += ',';
    out += fmt(rec.rate_fd);
    out += ',';
    out += fmt(rec.gap);
    out += '\n';
  }
  return out;
}

std::string emit_purity_report(const Trajectory& traj,
                               const PurityReport& report) {
  std::string out;
  out += "verdict: ";
  out += to_string(report.verdict);
  out += "\nmax_abs_residual: " + fmt(report.max_abs_residual);
  out += "\nthreshold: " + fmt(report.threshold);
  out += "\n\nt,residual\n";
  for (std::size_t k = 0; k < report.residuals.size(); ++k) {
    out += fmt(traj.times[k]);
    out += ',';
    out += fmt(report.residuals[k]);
    out += '\n';
  }
  return out;
}

std::string render_summary(const ScenarioConfig& cfg,
                           const ScenarioResult& result) {
  const Trajectory& traj = result.trajectory;
  const SampleDiagnostics& first = traj.diagnostics.front();
  const SampleDiagnostics& last = traj.diagnostics.back();
  std::ostringstream out;
  out << "scenario: " << cfg.name << "\n";
  out << "model: " << family_name(cfg.model) << "\n";
  out << "samples: " << traj.size() << "  t_end: " << fmt(cfg.time.t_end)
      << "\n";
  out << "integrator: "
      << (cfg.integrator.method == IntegratorOptions::Method::rk4 ? "rk4"
                                                                  : "rk45")
      << "\n";
  const GaussianState& s0 = result.initial_state;
  out << "initial state: var_qq=" << fmt(s0.var_qq)
      << " var_pp=" << fmt(s0.var_pp) << " cov_pq=" << fmt(s0.cov_pq)
      << " mean_q=" << fmt(s0.mean_q) << " mean_p=" << fmt(s0.mean_p) << "\n";
  auto row = [&](const char* tag, const SampleDiagnostics& d) {
    out << tag << " nu=" << fmt(d.nu) << " S=" << fmt(d.vn_entropy)
        << " S_l=" << fmt(d.linear_entropy) << " E_fluct=" << fmt(d.fluct_energy)
        << " E_total=" << fmt(d.total_energy) << "\n";
  };
  row("initial:", first);
  row("final:  ", last);
  out << "purity: verdict=" << to_string(result.purity.verdict)
      << " max|residual|=" << fmt(result.purity.max_abs_residual)
      << " threshold=" << fmt(result.purity.threshold) << "\n";
  out << "entropy audit: max_gap=" << fmt(result.entropy.max_gap)
      << " max_gap_richardson=" << fmt(result.entropy.max_gap_richardson)
      << "\n";
  const EvolutionModel evo = evolution_model(cfg.model, cfg.constants);
  if (const auto* kg = std::get_if<KGCoefficients>(&evo);
      kg && kg->ohmic_regularized) {
    out << "note: strictly Ohmic <p^2> is logarithmically divergent; the "
           "supplied value is treated as regularized\n";
  }
  return out.str();
}

std::vector<std::filesystem::path> write_outputs(
    const ScenarioConfig& cfg, const ScenarioResult& result,
    const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IOFailure("cannot create " + out_dir.string());
  std::vector<fs::path> written;
  auto emit = [&](const char* filename, const std::string& content) {
    const fs::path p = out_dir / filename;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IOFailure("cannot open " + p.string());
    out << content;
    if (!out) throw IOFailure("write failure on " + p.string());
    written.push_back(p);
  };
  if (cfg.outputs.trajectory_csv) {
    emit("trajectory.csv", emit_trajectory_csv(result.trajectory));
  }
  if (cfg.outputs.purity_report) {
    emit("purity_report.txt",
         emit_purity_report(result.trajectory, result.purity));
  }
  if (cfg.outputs.entropy_audit) {
    emit("entropy_audit.csv", emit_entropy_audit_csv(result.entropy));
  }
  if (cfg.outputs.summary) emit("summary.txt", result.summary_text);
  return written;
}

std::string model_catalog() {
  return
      "model families (config key: model.family)\n"
      "\n"
      "kg             generalized master equation with explicit coefficients\n"
      "               M, omega0, gamma_q, gamma_p, D_q, D_p\n"
      "               (coefficients may be expression strings in t)\n"
      "kg_thermal     thermal initial condition: D_q = gamma_q<q^2>-<p^2>/M^2,\n"
      "               D_p = gamma_p<p^2>/M^2\n"
      "               M, omega0, gamma_q, gamma_p, q2_eq, p2_eq[, temperature]\n"
      "ohmic          strictly Ohmic damping: gamma_p = gamma, gamma_q = omega0^2;\n"
      "               <p^2> must be supplied regularized\n"
      "               M, omega0, gamma, q2_eq, p2_eq[, temperature]\n"
      "drude          Drude damping: gamma_q = alpha^2+eta^2, gamma_p = 2 alpha\n"
      "               M, alpha, eta, q2_eq, p2_eq[, omega0, temperature]\n"
      "weak_coupling  weak-damping equation with coefficients K_c, K_s, gamma_c\n"
      "               M, omega0, K_c, K_s, gamma_c[, gamma_s]\n"
      "agarwal        Agarwal equation: gamma_q = omega0^2, gamma_p = 2 kappa,\n"
      "               D_q = 0, D_p = hbar omega0 kappa coth(hbar omega0/2kT)/M\n"
      "               M, omega0, kappa[, temperature]\n"
      "weidlich_haake Lindblad-form weak-coupling equation with rates\n"
      "               (gamma_c/4)[coth(hbar omega0/2kT) +- 1]\n"
      "               M, omega0, gamma_c[, temperature]\n"
      "lindblad       full Lindblad parameter set; must satisfy\n"
      "               D_pp D_qq - D_pq^2 >= hbar^2 lambda^2/4 (ineq)\n"
      "               m, omega, lambda, D_pp, D_qq[, mu, D_pq]\n"
      "lindblad_coepur purity-preserving diffusion derived from (lambda, mu,\n"
      "               omega, m); underdamped only (omega > |mu|)\n"
      "\n"
      "initial_state.kind: moments | ccs | auto\n"
      "integrator: {method: rk4[, dt]} | {method: rk45[, rel_tol]}\n"
      "outputs: trajectory_csv | purity_report | entropy_audit | summary\n";
}

}  // namespace purosc
