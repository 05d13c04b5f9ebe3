#pragma once

#include <string>
#include <vector>

#include "fracp/checks.hpp"
#include "fracp/evolution.hpp"

namespace fracp {

/// Solutions for truncated data T_n(f), T_n(u0) over increasing levels n.
struct CascadeReport {
  struct LevelDistance {
    double n = 0.0;
    double m = 0.0;
    /// sup_k ||u_n^k - u_m^k||_1 checked against ||u0n - u0m||_1 + sum tau ||fn - fm||_1.
    CheckReport check;
  };
  struct EnergyEntry {
    double n = 0.0;
    double k = 0.0;
    CheckReport check;
  };
  /// [T_k(u_n(T)) - T_k(u_N(T))]^p against the finest level N.
  struct ConvergenceEntry {
    double n = 0.0;
    double k = 0.0;
    double seminorm = 0.0;
  };

  std::vector<double> levels;
  std::vector<double> truncation_levels;
  std::vector<SampledData> data;
  std::vector<Trajectory> trajectories;
  std::vector<LevelDistance> distances;
  std::vector<EnergyEntry> energy;
  std::vector<ConvergenceEntry> convergence;
  std::vector<std::string> failures;

  bool complete() const { return failures.empty(); }
  bool all_checks_pass() const;
};

/// Rejects negative data and non-increasing levels. A level whose solve fails
/// is listed in `failures`; checks involving it are skipped.
CascadeReport truncation_cascade(const ParabolicProblem& problem, const std::vector<double>& levels,
                                 const std::vector<double>& truncation_levels = {1.0});

}  // namespace fracp
