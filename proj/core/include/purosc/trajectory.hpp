#pragma once

#include <vector>

#include "purosc/state.hpp"

namespace purosc {

/// Per-sample derived quantities recorded along a trajectory.
struct SampleDiagnostics {
  double nu = 1.0;
  double linear_entropy = 0.0;
  double vn_entropy = 0.0;
  double purity_residual = 0.0;  ///< the owning model's purity condition LHS
  double entropy_rate = 0.0;     ///< closed-form dS_l/dt for the owning model
  double fluct_energy = 0.0;
  double total_energy = 0.0;
};

/// Ordered time series of states plus diagnostics, one entry per sample.
struct Trajectory {
  std::vector<double> times;
  std::vector<GaussianState> states;
  std::vector<SampleDiagnostics> diagnostics;

  std::size_t size() const { return times.size(); }
};

/// n >= 2 evenly spaced points covering [t0, t1].
std::vector<double> linspace(double t0, double t1, int n);

}  // namespace purosc
