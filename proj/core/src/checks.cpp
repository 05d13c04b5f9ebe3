#include "fracp/checks.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "fracp/nonlocal.hpp"

namespace fracp {

namespace {

void require_same_time_grid(const Trajectory& a, const Trajectory& b, const char* what) {
  if (a.states.empty() || b.states.empty())
    throw std::invalid_argument(std::string(what) + ": empty trajectory");
  require_same_grid(a.states.front(), b.states.front(), what);
  if (a.steps() != b.steps() || a.tau != b.tau)
    throw std::invalid_argument(std::string(what) + ": time grid mismatch");
}

void require_matching_data(const Trajectory& traj, const SampledData& data, const char* what) {
  if (!traj.complete) throw std::invalid_argument(std::string(what) + ": incomplete trajectory");
  if (data.steps() != traj.steps() || data.tau != traj.tau)
    throw std::invalid_argument(std::string(what) + ": data and trajectory time grids differ");
  require_same_grid(traj.states.front(), data.initial, what);
}

// Per-pair sum over D_Omega plus the beyond-collar pseudo pairs (partner value 0).
template <typename PairFn, typename TailFn>
double sum_pairs(const KernelTable& kernel, PairFn&& pair_fn, TailFn&& tail_fn) {
  const Grid& g = kernel.grid();
  const auto& pairs = g.pairs();
  const auto weights = kernel.weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k)
    sum += weights[k] * pair_fn(pairs[k].first, pairs[k].second);
  double tail = 0.0;
  for (std::size_t i : g.interior_nodes()) tail += kernel.tail(i) * tail_fn(i);
  return sum + g.cell_volume() * tail;
}

}  // namespace

CheckReport CheckReport::make(std::string name, double lhs, double rhs, double tolerance) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tolerance = tolerance;
  r.passed = r.slack >= -tolerance;
  return r;
}

std::string CheckReport::text() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-28s %s  lhs=%.6e rhs=%.6e slack=%.3e tol=%.1e",
                name.c_str(), passed ? "PASS" : "FAIL", lhs, rhs, slack, tolerance);
  return buf;
}

TailSet::TailSet(double level) : h(level) {
  if (!(level >= 0.0)) throw std::invalid_argument("tail level must be >= 0");
}

bool TailSet::contains(double a, double b) const {
  const double lo = std::min(std::abs(a), std::abs(b));
  const double hi = std::max(std::abs(a), std::abs(b));
  return (lo <= h && hi >= h + 1.0) || a * b < 0.0;
}

void TestFunction::validate(const Grid& grid) const {
  if (!(radius > 0.0)) throw std::invalid_argument("test function radius must be > 0");
  if (!(horizon > 0.0)) throw std::invalid_argument("test function horizon must be > 0");
  const auto& spec = grid.spec();
  for (int a = 0; a < grid.dimension(); ++a) {
    if (!(center[a] - radius > spec.box_lo[a] && center[a] + radius < spec.box_hi[a]))
      throw std::invalid_argument("test function support must lie strictly inside the domain");
  }
}

double TestFunction::value(const Point& x, double t) const {
  const double dx = x[0] - center[0];
  const double dy = x[1] - center[1];
  const double rho2 = (dx * dx + dy * dy) / (radius * radius);
  if (rho2 >= 1.0) return 0.0;
  const double b = 1.0 - rho2;
  return amplitude * b * b * (1.0 - t / horizon);
}

double TestFunction::time_derivative(const Point& x, double) const {
  const double dx = x[0] - center[0];
  const double dy = x[1] - center[1];
  const double rho2 = (dx * dx + dy * dy) / (radius * radius);
  if (rho2 >= 1.0) return 0.0;
  const double b = 1.0 - rho2;
  return -amplitude * b * b / horizon;
}

Field TestFunction::at(const GridPtr& grid, double t) const {
  // 1-D nodes carry y = 0, so the unused center coordinate is dropped.
  TestFunction local = *this;
  if (grid->dimension() == 1) local.center[1] = 0.0;
  return Field::from_function(grid, [&](const Point& x) { return local.value(x, t); });
}

Renormalizer Renormalizer::from_plateau(PlateauFn h, double offset) {
  return {[h, offset](double r) { return plateau(h, r).first + offset; },
          [h](double r) { return plateau(h, r).second; }};
}

CheckReport check_l1_contraction(const Trajectory& u, const Trajectory& v, const SampledData& data_u,
                                 const SampledData& data_v) {
  require_same_time_grid(u, v, "check_l1_contraction");
  require_matching_data(u, data_u, "check_l1_contraction");
  require_matching_data(v, data_v, "check_l1_contraction");
  double lhs = 0.0;
  for (int k = 0; k <= u.steps(); ++k) lhs = std::max(lhs, (u.states[k] - v.states[k]).l1_norm());
  double rhs = (data_u.initial - data_v.initial).l1_norm();
  for (int n = 0; n < data_u.steps(); ++n)
    rhs += data_u.tau * (data_u.source[n] - data_v.source[n]).l1_norm();
  const double measure = u.states.front().grid().domain_measure();
  const double tol = kCheckAbsoluteTolerance +
                     10.0 * measure * (u.accumulated_residual() + v.accumulated_residual());
  return CheckReport::make("l1_contraction", lhs, rhs, tol);
}

CheckReport check_comparison(const Trajectory& u, const Trajectory& v) {
  require_same_time_grid(u, v, "check_comparison");
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= u.steps(); ++k)
    for (std::size_t i : u.states[k].grid().interior_nodes())
      worst = std::max(worst, u.states[k][i] - v.states[k][i]);
  const double tol =
      kCheckAbsoluteTolerance + 10.0 * (u.accumulated_residual() + v.accumulated_residual());
  return CheckReport::make("comparison", worst, 0.0, tol);
}

CheckReport check_energy_estimate(const KernelTable& kernel, const Trajectory& traj,
                                  const SampledData& data, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("check_energy_estimate: k must be > 0");
  require_matching_data(traj, data, "check_energy_estimate");
  const TruncationLevel level(k);
  double lhs = 0.0;
  for (int n = 1; n <= traj.steps(); ++n)
    lhs += 0.5 * traj.tau * gagliardo_p(kernel, truncate(level, traj.states[n]));
  const double rhs = k * (data.source_l1() + data.initial.l1_norm());
  const double tol = kCheckAbsoluteTolerance +
                     10.0 * k * kernel.grid().domain_measure() * traj.accumulated_residual();
  return CheckReport::make(fmt::format("energy_estimate_k={}", k), lhs, rhs, tol);
}

double renormalization_tail(const KernelTable& kernel, const Trajectory& traj, double h) {
  const TailSet set(h);
  const double p = kernel.p();
  double total = 0.0;
  for (int n = 1; n <= traj.steps(); ++n) {
    const Field& u = traj.states[n];
    require_grid(kernel.grid(), u, "renormalization_tail");
    const double s = sum_pairs(
        kernel,
        [&](std::size_t i, std::size_t j) {
          return set.contains(u[i], u[j]) ? 2.0 * std::pow(std::abs(u[i] - u[j]), p - 1.0) : 0.0;
        },
        [&](std::size_t i) {
          return set.contains(u[i], 0.0) ? 2.0 * std::pow(std::abs(u[i]), p - 1.0) : 0.0;
        });
    total += traj.tau * s;
  }
  return total;
}

RenormalizedTerms renormalized_residual(const KernelTable& kernel, const Trajectory& traj,
                                        const SampledData& data, const Renormalizer& h,
                                        const TestFunction& phi) {
  const Grid& g = kernel.grid();
  phi.validate(g);
  require_matching_data(traj, data, "renormalized_residual");
  if (std::abs(phi.horizon - traj.tau * traj.steps()) > 1e-12 * phi.horizon)
    throw std::invalid_argument("renormalized_residual: test function horizon differs from T");

  const GridPtr& gp = traj.states.front().grid_ptr();
  const double w = g.cell_volume();
  RenormalizedTerms t;

  Field phi_prev = phi.at(gp, 0.0);
  for (std::size_t i : g.interior_nodes())
    t.initial_term -= w * h.value(data.initial[i]) * phi_prev[i];

  for (int n = 1; n <= traj.steps(); ++n) {
    const Field& u = traj.states[n];
    const Field phi_n = phi.at(gp, n * traj.tau);
    std::vector<double> tv(g.node_count(), 0.0);
    for (std::size_t i : g.interior_nodes()) {
      t.time_term -= w * h.value(u[i]) * (phi_n[i] - phi_prev[i]);
      tv[i] = h.derivative(u[i]) * phi_n[i];
      t.source_term += traj.tau * w * data.source[n - 1][i] * tv[i];
    }
    t.pair_term += traj.tau * pairing(kernel, u, Field(gp, std::move(tv)));
    phi_prev = phi_n;
  }
  t.residual = std::abs(t.time_term + t.initial_term + t.pair_term - t.source_term);
  return t;
}

EntropyTerms entropy_residual(const KernelTable& kernel, const Trajectory& traj,
                              const SampledData& data, const TestFunction& phi, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("entropy_residual: k must be > 0");
  const Grid& g = kernel.grid();
  phi.validate(g);
  require_matching_data(traj, data, "entropy_residual");
  if (std::abs(phi.horizon - traj.tau * traj.steps()) > 1e-12 * phi.horizon)
    throw std::invalid_argument("entropy_residual: test function horizon differs from T");

  const TruncationLevel level(k);
  const GridPtr& gp = traj.states.front().grid_ptr();
  const double w = g.cell_volume();
  const int steps = traj.steps();
  EntropyTerms t;

  Field phi_prev = phi.at(gp, 0.0);
  const Field phi_final = phi.at(gp, steps * traj.tau);
  for (std::size_t i : g.interior_nodes()) {
    t.theta_initial += w * theta(level, data.initial[i] - phi_prev[i]);
    t.theta_final += w * theta(level, traj.states[steps][i] - phi_final[i]);
  }

  for (int n = 1; n <= steps; ++n) {
    const Field& u = traj.states[n];
    const Field& u_prev = traj.states[n - 1];
    const Field phi_n = phi.at(gp, n * traj.tau);
    std::vector<double> tv(g.node_count(), 0.0);
    for (std::size_t i : g.interior_nodes()) {
      // integral over (t_{n-1}, t_n] of phi_t T_k(u^{n-1} - phi(t)) dt, exact
      t.time_term += w * (theta(level, u_prev[i] - phi_prev[i]) - theta(level, u_prev[i] - phi_n[i]));
      tv[i] = truncate(level, u[i] - phi_n[i]);
      t.source_term += traj.tau * w * data.source[n - 1][i] * tv[i];
    }
    t.pair_term += traj.tau * pairing(kernel, u, Field(gp, std::move(tv)));
    phi_prev = phi_n;
  }

  const double lhs = t.theta_final - t.theta_initial + t.time_term + t.pair_term;
  const double tol =
      kCheckAbsoluteTolerance + 10.0 * k * g.domain_measure() * traj.accumulated_residual();
  t.report = CheckReport::make(fmt::format("entropy_k={}", k), lhs, t.source_term, tol);
  return t;
}

double poincare_ratio(const KernelTable& kernel, const Field& u) {
  const Grid& g = kernel.grid();
  require_grid(g, u, "poincare_ratio");
  if (u.max_abs() == 0.0) throw std::invalid_argument("poincare_ratio: zero field");
  double mass = 0.0;
  for (std::size_t i : g.interior_nodes()) mass += abs_power(u[i], kernel.p());
  return g.cell_volume() * mass / gagliardo_p(kernel, u);
}

double poincare_constant(const KernelTable& kernel) {
  const Grid& g = kernel.grid();
  const double bound =
      exterior_mass_lower_bound(g.dimension(), kernel.p(), kernel.s_plus(), g.domain_measure());
  return 1.0 / (2.0 * bound);
}

}  // namespace fracp
