#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracp/grid.hpp"
#include "fracp/resolvent.hpp"

namespace fracp::experiment {

/// Data profile selector: zero | constant | gaussian | power.
///   constant  amplitude
///   gaussian  amplitude * exp(-|x - center|^2 / (2 width^2))
///   power     amplitude * |x - center|^(-alpha), alpha < N
struct ProfileSpec {
  std::string kind = "zero";
  double amplitude = 1.0;
  Point center{0.5, 0.5};
  double width = 0.1;
  double alpha = 0.5;
};

/// Order selector: constant | affine | bump (see VarOrderField).
struct OrderSpec {
  std::string kind = "affine";
  double s0 = 0.3;
  double slope = 0.2;
  double cap = 1.0;
  double amplitude = 0.2;
  Point center{0.5, 0.5};
  double width = 0.25;
};

struct ExperimentConfig {
  GridSpec grid;
  int time_steps = 10;
  OrderSpec order;
  double p = 2.0;
  ProfileSpec initial;
  ProfileSpec source;
  bool has_alt = false;
  ProfileSpec alt_initial;
  ProfileSpec alt_source;

  std::vector<double> cascade_levels;
  std::vector<double> truncation_levels{1.0};

  std::vector<std::string> checks;
  std::vector<double> check_k{1.0};
  std::vector<double> tail_h{1.0, 2.0, 4.0, 8.0};
  double check_tolerance = 1e-8;
  std::string trajectory_path;
  std::string alt_trajectory_path;
  Point phi_center{0.5, 0.5};
  double phi_radius = 0.25;
  double phi_amplitude = 1.0;
  int poincare_samples = 50;

  SolverOptions solver;

  std::vector<int> bench_sizes;
  int bench_repeats = 3;
  int bench_applies = 100;

  std::string output_dir = "out";
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ConfigIssue {
  std::string key;
  int line = 0;
  std::string message;
};

/// Every violation found in one parse, each naming its key path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Flat `section.key = value` lines; `#` starts a comment. Lists are comma
/// separated. Unknown keys, duplicates, out-of-range values and unresolvable
/// selectors are all collected before throwing ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical `key = value` rendering with every default filled in.
std::string render_config(const ExperimentConfig& config);

/// Names accepted by checks.select.
const std::vector<std::string>& known_checks();

}  // namespace fracp::experiment
