#include "fracp/experiment/runs.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "fracp/cascade.hpp"
#include "fracp/checks.hpp"
#include "fracp/evolution.hpp"
#include "fracp/experiment/csv_io.hpp"
#include "fracp/experiment/profiles.hpp"
#include "fracp/kernel.hpp"
#include "fracp/nonlocal.hpp"
#include "fracp/parallel.hpp"

namespace fracp::experiment {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Setup {
  GridPtr grid;
  KernelTable kernel;
};

Setup make_setup(const ExperimentConfig& c) {
  GridPtr grid = build_grid(c.grid);
  KernelTable kernel = assemble_kernel(grid, make_order(c.order), c.p, c.threads);
  return {std::move(grid), std::move(kernel)};
}

ParabolicProblem make_problem(const ExperimentConfig& c, const KernelTable& kernel,
                              const ProfileSpec& initial, const ProfileSpec& source) {
  ParabolicProblem prob;
  prob.kernel = &kernel;
  prob.initial = make_profile(initial, kernel.grid_ptr());
  Field f = make_profile(source, kernel.grid_ptr());
  prob.source = [f](double) { return f; };
  prob.horizon = c.grid.time_horizon;
  prob.steps = c.time_steps;
  prob.options = c.solver;
  return prob;
}

RunManifest start(const std::string& command, const ExperimentConfig& c) {
  RunManifest m;
  m.command = command;
  m.config_text = render_config(c);
  m.config_hash = config_hash(c);
  fs::create_directories(c.output_dir);
  return m;
}

void finish(RunManifest& m, const ExperimentConfig& c) {
  const fs::path path = fs::path(c.output_dir) / "manifest.txt";
  m.files.push_back(path.string());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << m.render();
}

void add_kernel_notes(RunManifest& m, const KernelTable& kernel) {
  for (const auto& w : kernel.warnings()) m.notes.push_back("kernel: " + w);
}

// u^n + tau A(u^n) - u^{n-1} - tau f^n, worst step in sup norm.
double worst_step_residual(const KernelTable& kernel, const Trajectory& traj,
                           const SampledData& data) {
  double worst = 0.0;
  for (int n = 1; n <= traj.steps(); ++n) {
    const Field au = apply_operator(kernel, traj.states[n]);
    for (std::size_t i : kernel.grid().interior_nodes()) {
      const double r = traj.states[n][i] + traj.tau * au[i] - traj.states[n - 1][i] -
                       traj.tau * data.source[n - 1][i];
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

CheckReport consistency_report(const std::string& name, const KernelTable& kernel,
                               const Trajectory& traj, const SampledData& data,
                               const ExperimentConfig& c) {
  if (traj.steps() != data.steps() || std::abs(traj.tau - data.tau) > 1e-12 * data.tau)
    return CheckReport::make(name, 1.0, 0.0, 0.0);
  double scale = data.initial.max_abs();
  for (const Field& f : data.source) scale = std::max(scale, data.tau * f.max_abs());
  const double allowed = std::max(100.0 * c.solver.relative_tolerance, 1e-8) *
                         (1.0 + scale + traj.final_state().max_abs());
  return CheckReport::make(name, worst_step_residual(kernel, traj, data), allowed, 0.0);
}

CheckReport with_floor(CheckReport r, double floor) {
  return CheckReport::make(r.name, r.lhs, r.rhs, r.tolerance - kCheckAbsoluteTolerance + floor);
}

TestFunction make_test_function(const ExperimentConfig& c, double amplitude_scale) {
  TestFunction phi;
  phi.center = c.phi_center;
  phi.radius = c.phi_radius;
  phi.amplitude = c.phi_amplitude * amplitude_scale;
  phi.horizon = c.grid.time_horizon;
  return phi;
}

}  // namespace

std::string RunManifest::render() const {
  std::string out;
  out += "command = " + command + "\n";
  out += "config_hash = " + config_hash + "\n";
  out += fmt::format("exit_code = {}\n", exit_code);
  out += fmt::format("solver_iterations = {}\n", solver_iterations);
  for (const auto& [name, t] : timings) out += fmt::format("timing.{} = {:.6f}\n", name, t);
  for (const auto& f : files) out += "file = " + f + "\n";
  for (const auto& n : notes) out += "note = " + n + "\n";
  out += "[config]\n" + config_text;
  return out;
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : render_config(config)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return fmt::format("{:016x}", h);
}

RunManifest run_solve(const ExperimentConfig& c) {
  RunManifest m = start("solve", c);
  auto t0 = Clock::now();
  Setup s = make_setup(c);
  m.timings.emplace_back("assembly", seconds_since(t0));
  add_kernel_notes(m, s.kernel);

  auto solve_one = [&](const ProfileSpec& init, const ProfileSpec& src, const std::string& file,
                       const std::string& label) {
    auto t = Clock::now();
    const Trajectory traj = solve_parabolic(make_problem(c, s.kernel, init, src));
    m.timings.emplace_back("solve_" + label, seconds_since(t));
    m.solver_iterations += traj.total_iterations();
    const fs::path path = fs::path(c.output_dir) / file;
    write_trajectory_csv(path, traj);
    m.files.push_back(path.string());
    if (!traj.complete) {
      m.exit_code = 1;
      m.notes.push_back(label + " solve failed: " + traj.failure);
    }
  };
  solve_one(c.initial, c.source, "trajectory.csv", "primary");
  if (c.has_alt) solve_one(c.alt_initial, c.alt_source, "trajectory_alt.csv", "alt");
  finish(m, c);
  return m;
}

RunManifest run_cascade(const ExperimentConfig& c) {
  if (c.cascade_levels.empty())
    throw ConfigError({{"cascade.levels", 0, "required by the cascade command"}});
  RunManifest m = start("cascade", c);
  auto t0 = Clock::now();
  Setup s = make_setup(c);
  m.timings.emplace_back("assembly", seconds_since(t0));
  add_kernel_notes(m, s.kernel);

  t0 = Clock::now();
  const auto report = truncation_cascade(make_problem(c, s.kernel, c.initial, c.source),
                                         c.cascade_levels, c.truncation_levels);
  m.timings.emplace_back("cascade", seconds_since(t0));
  for (const auto& t : report.trajectories) m.solver_iterations += t.total_iterations();
  for (const auto& p : write_cascade_csv(c.output_dir, report)) m.files.push_back(p.string());
  for (const auto& f : report.failures) m.notes.push_back(f);
  if (!report.all_checks_pass()) m.exit_code = 1;
  finish(m, c);
  return m;
}

RunManifest run_checks(const ExperimentConfig& c) {
  if (c.checks.empty())
    throw ConfigError({{"checks.select", 0, "no checks selected; refusing to report a silent pass"}});
  auto needs = [&](const char* name) {
    return std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end();
  };
  const bool needs_pair = needs("l1_contraction") || needs("comparison");
  const bool needs_primary = needs_pair || needs("energy") || needs("tail") ||
                             needs("renormalized") || needs("entropy");
  std::vector<ConfigIssue> missing;
  if (needs_primary && c.trajectory_path.empty())
    missing.push_back({"checks.trajectory", 0, "required by the selected checks"});
  if (needs_pair && c.alt_trajectory_path.empty())
    missing.push_back({"checks.alt_trajectory", 0, "required by l1_contraction and comparison"});
  if (!missing.empty()) throw ConfigError(std::move(missing));

  RunManifest m = start("check", c);
  auto t0 = Clock::now();
  Setup s = make_setup(c);
  m.timings.emplace_back("assembly", seconds_since(t0));
  add_kernel_notes(m, s.kernel);
  const KernelTable& kernel = s.kernel;

  std::vector<CheckReport> reports;
  t0 = Clock::now();

  Trajectory traj, alt;
  SampledData data, alt_data;
  if (needs_primary) {
    traj = read_trajectory_csv(c.trajectory_path, s.grid);
    data = sample_data(make_problem(c, kernel, c.initial, c.source));
    reports.push_back(consistency_report("trajectory_consistency", kernel, traj, data, c));
  }
  if (needs_pair) {
    alt = read_trajectory_csv(c.alt_trajectory_path, s.grid);
    const ProfileSpec& ai = c.has_alt ? c.alt_initial : c.initial;
    const ProfileSpec& as = c.has_alt ? c.alt_source : c.source;
    alt_data = sample_data(make_problem(c, kernel, ai, as));
    reports.push_back(consistency_report("alt_trajectory_consistency", kernel, alt, alt_data, c));
  }
  const bool data_ok = !needs_primary || reports.front().passed;

  if (needs("l1_contraction"))
    reports.push_back(with_floor(check_l1_contraction(traj, alt, data, alt_data), c.check_tolerance));
  if (needs("comparison"))
    reports.push_back(with_floor(check_comparison(traj, alt), c.check_tolerance));
  if (needs("energy") && data_ok)
    for (double k : c.check_k)
      reports.push_back(with_floor(check_energy_estimate(kernel, traj, data, k), c.check_tolerance));
  if (needs("tail")) {
    double sup = 0.0;
    for (const Field& u : traj.states) sup = std::max(sup, u.max_abs());
    std::vector<double> hs = c.tail_h;
    std::sort(hs.begin(), hs.end());
    double prev = renormalization_tail(kernel, traj, hs.front());
    double worst_increase = 0.0;
    for (std::size_t a = 1; a < hs.size(); ++a) {
      const double cur = renormalization_tail(kernel, traj, hs[a]);
      worst_increase = std::max(worst_increase, cur - prev);
      prev = cur;
    }
    reports.push_back(CheckReport::make("tail_nonincreasing", worst_increase, 0.0, 0.0));
    const double h_zero = std::floor(sup) + 0.5;
    reports.push_back(CheckReport::make(fmt::format("tail_vanishes_h={}", h_zero),
                                        renormalization_tail(kernel, traj, h_zero), 0.0, 0.0));
  }
  if (needs("renormalized") && data_ok) {
    double sup = 0.0;
    for (const Field& u : traj.states) sup = std::max(sup, u.max_abs());
    const TestFunction phi = make_test_function(c, 1.0);
    const auto terms =
        renormalized_residual(kernel, traj, data, Renormalizer::from_plateau(PlateauFn(sup + 1.0)), phi);
    // For H = identity on the solution range the discrete identity leaves
    // sum_n <u^n - u^{n-1}, phi^{n-1} - phi^n>, bounded by the time variation below.
    double bound = 0.0;
    for (int n = 1; n <= traj.steps(); ++n) {
      const Field dphi = phi.at(s.grid, (n - 1) * traj.tau) - phi.at(s.grid, n * traj.tau);
      bound += (traj.states[n] - traj.states[n - 1]).l1_norm() * dphi.max_abs();
    }
    reports.push_back(CheckReport::make("renormalized_residual", terms.residual, bound,
                                        c.check_tolerance));
  }
  if (needs("entropy") && data_ok) {
    for (double scale : {0.0, 0.5, 1.0})
      for (double k : c.check_k) {
        auto e = entropy_residual(kernel, traj, data, make_test_function(c, scale), k);
        e.report.name = fmt::format("entropy_phi={}_k={}", scale, k);
        reports.push_back(with_floor(e.report, c.check_tolerance));
      }
  }
  if (needs("poincare")) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int sample = 0; sample < c.poincare_samples; ++sample) {
      const Field u = Field::from_function(s.grid, [&](const Point&) { return dist(rng); });
      worst = std::max(worst, poincare_ratio(kernel, u));
    }
    reports.push_back(CheckReport::make("poincare_random_fields", worst, poincare_constant(kernel), 0.0));
  }
  m.timings.emplace_back("checks", seconds_since(t0));

  const fs::path csv = fs::path(c.output_dir) / "checks.csv";
  const fs::path txt = fs::path(c.output_dir) / "checks.txt";
  write_checks_csv(csv, reports);
  write_checks_text(txt, reports);
  m.files.push_back(csv.string());
  m.files.push_back(txt.string());
  for (const auto& r : reports)
    if (!r.passed) {
      m.exit_code = 1;
      m.notes.push_back("failed: " + r.text());
    }
  finish(m, c);
  return m;
}

RunManifest run_kernel_stats(const ExperimentConfig& c) {
  RunManifest m = start("kernel-stats", c);
  auto t0 = Clock::now();
  Setup s = make_setup(c);
  m.timings.emplace_back("assembly", seconds_since(t0));
  add_kernel_notes(m, s.kernel);
  const fs::path pairs = fs::path(c.output_dir) / "kernel.csv";
  const fs::path nodes = fs::path(c.output_dir) / "kernel_nodes.csv";
  write_kernel_csv(pairs, s.kernel);
  write_kernel_nodes_csv(nodes, s.kernel);
  m.files.push_back(pairs.string());
  m.files.push_back(nodes.string());
  finish(m, c);
  return m;
}

RunManifest bench_kernel(const ExperimentConfig& c) {
  RunManifest m = start("bench", c);
  std::vector<int> sizes = c.bench_sizes;
  if (sizes.empty()) sizes = {c.grid.cells_per_axis, 2 * c.grid.cells_per_axis};

  auto mean_std = [](const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return std::pair{mean, v.size() > 1 ? std::sqrt(var / (v.size() - 1)) : 0.0};
  };

  const fs::path path = fs::path(c.output_dir) / "bench.csv";
  std::ofstream out(path, std::ios::binary);
  out << "size,nodes,pairs,expected_pairs,threads,assembly_seconds,assembly_stddev,"
         "apply_seconds,apply_stddev,pairs_per_second,parallel_matches_serial\n";
  const VarOrderField order = make_order(c.order);
  for (int size : sizes) {
    GridSpec spec = c.grid;
    spec.cells_per_axis = size;
    const GridPtr grid = build_grid(spec);
    const std::size_t ni = grid->interior_count();
    const std::size_t ne = grid->node_count() - ni;
    const std::size_t expected = ni * (ni - 1) / 2 + ni * ne;

    std::vector<double> assembly, apply;
    KernelTable kernel;
    for (int rep = 0; rep < c.bench_repeats; ++rep) {
      auto t = Clock::now();
      kernel = assemble_kernel(grid, order, c.p, c.threads);
      assembly.push_back(seconds_since(t));
    }
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    const Field u = Field::from_function(grid, [&](const Point&) { return dist(rng); });
    Field last;
    for (int rep = 0; rep < c.bench_repeats; ++rep) {
      auto t = Clock::now();
      for (int a = 0; a < c.bench_applies; ++a) last = apply_operator(kernel, u, c.threads);
      apply.push_back(seconds_since(t) / c.bench_applies);
    }
    const Field serial = apply_operator(kernel, u, 1);
    const bool same = std::equal(serial.values().begin(), serial.values().end(),
                                 last.values().begin());
    const auto [am, as] = mean_std(assembly);
    const auto [pm, ps] = mean_std(apply);
    const double pairs = static_cast<double>(grid->pairs().size());
    out << size << ',' << grid->node_count() << ',' << grid->pairs().size() << ',' << expected << ','
        << c.threads << ',' << format_number(am) << ',' << format_number(as) << ','
        << format_number(pm) << ',' << format_number(ps) << ','
        << format_number(pm > 0.0 ? 2.0 * pairs / pm : 0.0) << ',' << (same ? 1 : 0) << '\n';
    m.timings.emplace_back(fmt::format("assembly_M{}", size), am);
    m.timings.emplace_back(fmt::format("apply_M{}", size), pm);
    if (!same) {
      m.exit_code = 1;
      m.notes.push_back(fmt::format("M={}: parallel apply differs from serial apply", size));
    }
    if (grid->pairs().size() != expected) m.exit_code = 1;
  }
  m.files.push_back(path.string());
  finish(m, c);
  return m;
}

}  // namespace fracp::experiment
