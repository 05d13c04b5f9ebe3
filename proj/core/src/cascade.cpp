#include "fracp/cascade.hpp"

#include <fmt/format.h>

#include <stdexcept>

#include "fracp/nonlocal.hpp"
#include "fracp/truncation.hpp"

namespace fracp {

bool CascadeReport::all_checks_pass() const {
  for (const auto& d : distances)
    if (!d.check.passed) return false;
  for (const auto& e : energy)
    if (!e.check.passed) return false;
  return complete();
}

CascadeReport truncation_cascade(const ParabolicProblem& problem, const std::vector<double>& levels,
                                 const std::vector<double>& truncation_levels) {
  if (levels.empty()) throw std::invalid_argument("truncation_cascade: no levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0)) throw std::invalid_argument("truncation_cascade: levels must be > 0");
    if (i > 0 && !(levels[i] > levels[i - 1]))
      throw std::invalid_argument("truncation_cascade: levels must be strictly increasing");
  }
  for (double k : truncation_levels)
    if (!(k > 0.0)) throw std::invalid_argument("truncation_cascade: k must be > 0");

  const SampledData base = sample_data(problem);
  if (base.initial.min_value() < 0.0)
    throw std::invalid_argument("truncation_cascade: initial data must be nonnegative");
  for (const Field& f : base.source)
    if (f.min_value() < 0.0)
      throw std::invalid_argument("truncation_cascade: source data must be nonnegative");

  const KernelTable& kernel = *problem.kernel;
  CascadeReport report;
  report.levels = levels;
  report.truncation_levels = truncation_levels;

  std::vector<bool> ok;
  for (double n : levels) {
    const TruncationLevel level(n);
    SampledData data;
    data.tau = base.tau;
    data.initial = truncate(level, base.initial);
    for (const Field& f : base.source) data.source.push_back(truncate(level, f));
    Trajectory traj = solve_sampled(kernel, data, problem.options);
    if (!traj.complete)
      report.failures.push_back(fmt::format("level {}: ", n) + traj.failure);
    ok.push_back(traj.complete);
    report.data.push_back(std::move(data));
    report.trajectories.push_back(std::move(traj));
  }

  for (std::size_t a = 0; a + 1 < levels.size(); ++a) {
    if (!ok[a] || !ok[a + 1]) continue;
    auto check = check_l1_contraction(report.trajectories[a], report.trajectories[a + 1],
                                      report.data[a], report.data[a + 1]);
    report.distances.push_back({levels[a], levels[a + 1], check});
  }

  for (std::size_t a = 0; a < levels.size(); ++a) {
    if (!ok[a]) continue;
    for (double k : truncation_levels)
      report.energy.push_back(
          {levels[a], k, check_energy_estimate(kernel, report.trajectories[a], report.data[a], k)});
  }

  const std::size_t finest = levels.size() - 1;
  if (ok[finest]) {
    for (std::size_t a = 0; a < finest; ++a) {
      if (!ok[a]) continue;
      for (double k : truncation_levels) {
        const TruncationLevel level(k);
        const Field diff = truncate(level, report.trajectories[a].final_state()) -
                           truncate(level, report.trajectories[finest].final_state());
        report.convergence.push_back({levels[a], k, gagliardo_p(kernel, diff)});
      }
    }
  }
  return report;
}

}  // namespace fracp
