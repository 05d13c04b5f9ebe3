#include "fracp/evolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace fracp {

void ParabolicProblem::validate() const {
  if (kernel == nullptr) throw std::invalid_argument("parabolic problem: missing kernel");
  if (steps < 1) throw std::invalid_argument("parabolic problem: steps must be >= 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("parabolic problem: horizon must be > 0");
  if (!source) throw std::invalid_argument("parabolic problem: missing source");
  require_grid(kernel->grid(), initial, "parabolic initial");
}

double SampledData::source_l1() const {
  double s = 0.0;
  for (const Field& f : source) s += tau * f.l1_norm();
  return s;
}

SampledData sample_data(const ParabolicProblem& problem) {
  problem.validate();
  SampledData data;
  data.initial = problem.initial;
  data.tau = problem.tau();
  data.source.reserve(static_cast<std::size_t>(problem.steps));
  for (int n = 1; n <= problem.steps; ++n) {
    Field f = problem.source(n * data.tau);
    require_grid(problem.kernel->grid(), f, "parabolic source");
    data.source.push_back(std::move(f));
  }
  return data;
}

double Trajectory::accumulated_residual() const {
  double s = 0.0;
  for (const auto& d : diagnostics) s += d.residual;
  return s;
}

int Trajectory::total_iterations() const {
  int s = 0;
  for (const auto& d : diagnostics) s += d.iterations;
  return s;
}

Trajectory solve_sampled(const KernelTable& kernel, const SampledData& data,
                         const SolverOptions& options) {
  if (!(data.tau > 0.0)) throw std::invalid_argument("solve_sampled: tau must be > 0");
  require_grid(kernel.grid(), data.initial, "solve_sampled initial");
  Trajectory traj;
  traj.tau = data.tau;
  traj.states.reserve(data.source.size() + 1);
  traj.states.push_back(data.initial);
  for (std::size_t n = 0; n < data.source.size(); ++n) {
    auto step = step_implicit_euler(kernel, traj.states.back(), data.source[n], data.tau, options);
    traj.diagnostics.push_back({step.iterations, step.residual, step.converged});
    if (!step.converged) {
      traj.complete = false;
      traj.failure = "step " + std::to_string(n + 1) + ": " + step.message +
                     " (residual " + std::to_string(step.residual) + ")";
      break;
    }
    traj.states.push_back(std::move(step.solution));
  }
  return traj;
}

Trajectory solve_parabolic(const ParabolicProblem& problem) {
  return solve_sampled(*problem.kernel, sample_data(problem), problem.options);
}

double refinement_gap(const ParabolicProblem& problem) {
  ParabolicProblem fine = problem;
  fine.steps = 2 * problem.steps;
  const Trajectory a = solve_parabolic(problem);
  const Trajectory b = solve_parabolic(fine);
  if (!a.complete || !b.complete)
    throw std::runtime_error("refinement_gap: solver failure");
  double gap = 0.0;
  for (int k = 0; k <= a.steps(); ++k)
    gap = std::max(gap, (a.states[k] - b.states[2 * k]).l1_norm());
  return gap;
}

}  // namespace fracp
