#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "purosc/dynamics.hpp"
#include "purosc/entropy.hpp"
#include "purosc/models.hpp"
#include "purosc/purity.hpp"

namespace purosc {

struct CcsInitialSpec {
  double r = 0.0;
  double eta = 1.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
};

/// Ask the purity classifier for the unique purity-preserving state.
struct AutoInitialTag {};

using InitialStateSpec =
    std::variant<GaussianState, CcsInitialSpec, AutoInitialTag>;

struct TimeSpec {
  double t_end = 0.0;
  int sample_count = 0;
};

struct OutputSelection {
  bool trajectory_csv = true;
  bool purity_report = true;
  bool entropy_audit = true;
  bool summary = true;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ModelVariant model = LindbladParams{};
  PhysConstants constants;
  InitialStateSpec initial = AutoInitialTag{};
  TimeSpec time;
  IntegratorOptions integrator;
  OutputSelection outputs;
};

/// Parses and validates a JSON configuration document. Structural problems
/// (bad JSON, missing or mistyped fields) throw ParseError; well-formed
/// documents violating a model constraint throw ValidationError naming the
/// constraint.
ScenarioConfig parse_config(const std::string& json_text);

/// parse_config plus file I/O; the scenario name defaults to the file stem.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Materializes the configured initial state (moments, ccs, or auto).
GaussianState resolve_initial_state(const ScenarioConfig& cfg);

struct ScenarioResult {
  GaussianState initial_state;
  Trajectory trajectory;
  PurityReport purity;
  EntropyAudit entropy;
  std::string summary_text;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Deterministic CSV with header
/// t,mean_q,mean_p,var_qq,var_pp,cov_pq,sigma_det,nu,S_l,S,purity_residual,
/// entropy_rate,E_fluct,E_total; LF newlines; 17 significant digits so values
/// round-trip exactly.
std::string emit_trajectory_csv(const Trajectory& traj);

std::string emit_entropy_audit_csv(const EntropyAudit& audit);

std::string emit_purity_report(const Trajectory& traj,
                               const PurityReport& report);

std::string render_summary(const ScenarioConfig& cfg,
                           const ScenarioResult& result);

/// Writes the selected outputs into out_dir (created if absent); returns the
/// paths written. Throws IOFailure.
std::vector<std::filesystem::path> write_outputs(
    const ScenarioConfig& cfg, const ScenarioResult& result,
    const std::filesystem::path& out_dir);

/// Human-readable list of the built-in model families and their parameters.
std::string model_catalog();

}  // namespace purosc
