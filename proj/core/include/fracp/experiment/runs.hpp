#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fracp/experiment/config.hpp"

namespace fracp::experiment {

struct RunManifest {
  std::string command;
  std::string config_hash;
  std::string config_text;
  std::vector<std::pair<std::string, double>> timings;  // seconds
  long long solver_iterations = 0;
  std::vector<std::string> files;
  std::vector<std::string> notes;
  int exit_code = 0;

  std::string render() const;
};

/// FNV-1a 64-bit hash of the canonical config rendering, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

// Each run writes its outputs and manifest.txt into config.output_dir and
// returns the manifest. exit_code is nonzero when a solve or check failed.

/// trajectory.csv (and trajectory_alt.csv when alt.* data is configured).
RunManifest run_solve(const ExperimentConfig& config);
/// cascade.csv, cascade_energy.csv, cascade_convergence.csv. Requires cascade.levels.
RunManifest run_cascade(const ExperimentConfig& config);
/// checks.csv and checks.txt over checks.select. Requires a non-empty selection.
RunManifest run_checks(const ExperimentConfig& config);
/// kernel.csv and kernel_nodes.csv.
RunManifest run_kernel_stats(const ExperimentConfig& config);
/// bench.csv: assembly and operator-apply timings at two or more grid sizes.
RunManifest bench_kernel(const ExperimentConfig& config);

}  // namespace fracp::experiment
