#include "fracp/resolvent.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracp/nonlocal.hpp"

namespace fracp {

namespace {

// |a + b|^p - |a|^p without cancellation when b is small relative to a.
double power_difference(double a, double b, double p) {
  if (p == 2.0) return b * (2.0 * a + b);
  if (a != 0.0 && std::abs(b) <= 0.5 * std::abs(a))
    return abs_power(a, p) * std::expm1(p * std::log1p(b / a));
  return abs_power(a + b, p) - abs_power(a, p);
}

class ProximalSolver {
 public:
  explicit ProximalSolver(const ResolventProblem& problem)
      : prob_(problem),
        kernel_(*problem.kernel),
        grid_(kernel_.grid()),
        interior_(grid_.interior_nodes()),
        p_(kernel_.p()),
        lambda_(problem.step),
        w_(grid_.cell_volume()) {}

  ResolventResult run() {
    ResolventResult result;
    const Field& d = prob_.datum;
    std::vector<double> u(grid_.node_count(), 0.0);
    if (prob_.initial_guess) {
      require_grid(grid_, *prob_.initial_guess, "resolvent initial guess");
      for (std::size_t i : interior_) u[i] = (*prob_.initial_guess)[i];
    } else {
      for (std::size_t i : interior_) u[i] = d[i];
    }

    const std::size_t m = interior_.size();
    Eigen::VectorXd r(m);
    Eigen::VectorXd dir(m);
    std::vector<double> step(grid_.node_count(), 0.0);

    for (int it = 0;; ++it) {
      residual(u, r);
      result.residual = r.lpNorm<Eigen::Infinity>();
      result.iterations = it;
      if (result.residual <= prob_.tolerance) {
        result.converged = true;
        break;
      }
      if (it >= prob_.max_iterations) {
        result.message = "iteration budget exhausted";
        break;
      }

      if (!newton_direction(u, r, dir)) dir = -r;
      double slope = r.dot(dir);
      if (!(slope < 0.0)) {
        dir = -r;
        slope = -r.squaredNorm();
      }
      for (std::size_t k = 0; k < m; ++k) step[interior_[k]] = dir[k];

      double alpha = 1.0;
      bool accepted = false;
      for (int trial = 0; trial < 80; ++trial, alpha *= 0.5) {
        const double change = objective_change(u, step, alpha);
        if (change < 0.0 && change <= 1e-4 * alpha * slope) {
          for (std::size_t i : interior_) u[i] += alpha * step[i];
          if (prob_.record_decreases) result.decreases.push_back(change * w_);
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        result.message = "line search could not decrease the objective";
        residual(u, r);
        result.residual = r.lpNorm<Eigen::Infinity>();
        result.iterations = it + 1;
        break;
      }
    }
    result.solution = Field(prob_.datum.grid_ptr(), std::move(u));
    return result;
  }

 private:
  void residual(const std::vector<double>& u, Eigen::VectorXd& r) const {
    const Field uf(prob_.datum.grid_ptr(), u);
    const Field au = apply_operator(kernel_, uf);
    for (std::size_t k = 0; k < interior_.size(); ++k) {
      const std::size_t i = interior_[k];
      r[k] = u[i] + lambda_ * au[i] - prob_.datum[i];
    }
  }

  // Curvature weight (p-1)|t|^(p-2). For p < 2 near-ties use the secant weight
  // |t|^(p-2) instead, which sends an isolated tie to zero in one step.
  double curvature(double t, double floor, double tie) const {
    if (p_ == 2.0) return 1.0;
    double a = std::abs(t);
    if (p_ > 2.0) return (p_ - 1.0) * std::pow(a, p_ - 2.0);
    a = std::max(a, floor);
    return (a < tie ? 1.0 : p_ - 1.0) * std::pow(a, p_ - 2.0);
  }

  bool newton_direction(const std::vector<double>& u, const Eigen::VectorXd& r,
                        Eigen::VectorXd& dir) const {
    const std::size_t m = interior_.size();
    double scale = 0.0;
    for (std::size_t i : interior_) scale = std::max(scale, std::abs(u[i]));
    scale = std::max(scale, prob_.datum.max_abs());
    const double floor = std::max(1e-20 * scale, 1e-300);
    const double tie = 1e-4 * scale;

    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m),
                                                  static_cast<Eigen::Index>(m));
    const double inv_w = 1.0 / w_;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = interior_[k];
      const auto row = kernel_.row(k);
      double diag = kernel_.tail(i) * curvature(u[i], floor, tie);
      for (std::size_t e = 0; e < row.partners.size(); ++e) {
        const std::size_t j = row.partners[e];
        const double c = row.weights[e] * inv_w * curvature(u[i] - u[j], floor, tie);
        diag += c;
        if (const auto rj = kernel_.interior_rank(j); rj != KernelTable::npos)
          h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(rj)) -= lambda_ * c;
      }
      h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) += lambda_ * diag;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(h);
    if (llt.info() != Eigen::Success) return false;
    dir = llt.solve(-r);
    return dir.allFinite();
  }

  // (J(u + alpha s) - J(u)) / w, accumulated term by term.
  double objective_change(const std::vector<double>& u, const std::vector<double>& s,
                          double alpha) const {
    const auto& pairs = grid_.pairs();
    const auto weights = kernel_.weights();
    double pair_sum = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      const double ds = s[i] - s[j];
      if (ds == 0.0) continue;
      pair_sum += weights[k] * power_difference(u[i] - u[j], alpha * ds, p_);
    }
    double tail_sum = 0.0;
    double fit = 0.0;
    for (std::size_t i : interior_) {
      if (s[i] == 0.0) continue;
      tail_sum += kernel_.tail(i) * power_difference(u[i], alpha * s[i], p_);
      const double as = alpha * s[i];
      fit += as * (u[i] - prob_.datum[i]) + 0.5 * as * as;
    }
    const double energy_change = (pair_sum + w_ * tail_sum) / p_;
    return lambda_ * energy_change / w_ + fit;
  }

  const ResolventProblem& prob_;
  const KernelTable& kernel_;
  const Grid& grid_;
  const std::vector<std::size_t>& interior_;
  double p_;
  double lambda_;
  double w_;
};

}  // namespace

ResolventProblem ResolventProblem::make(const KernelTable& kernel, Field datum, double step,
                                        const SolverOptions& options) {
  ResolventProblem prob;
  prob.kernel = &kernel;
  prob.tolerance = options.relative_tolerance * (1.0 + datum.max_abs());
  prob.datum = std::move(datum);
  prob.step = step;
  prob.max_iterations = options.max_iterations;
  prob.record_decreases = options.record_decreases;
  return prob;
}

void ResolventProblem::validate() const {
  if (kernel == nullptr) throw std::invalid_argument("resolvent: missing kernel");
  require_grid(kernel->grid(), datum, "resolvent datum");
  if (!(step > 0.0)) throw std::invalid_argument("resolvent: step must be > 0");
  if (!(tolerance > 0.0)) throw std::invalid_argument("resolvent: tolerance must be > 0");
  if (max_iterations < 0) throw std::invalid_argument("resolvent: negative iteration budget");
}

ResolventResult resolvent(const ResolventProblem& problem) {
  problem.validate();
  return ProximalSolver(problem).run();
}

double proximal_objective(const KernelTable& kernel, const Field& u, const Field& datum,
                          double step) {
  const Field diff = u - datum;
  return step * energy(kernel, u) + 0.5 * inner(diff, diff);
}

ResolventResult step_implicit_euler(const KernelTable& kernel, const Field& state,
                                    const Field& source_slice, double tau,
                                    const SolverOptions& options) {
  if (!(tau > 0.0)) throw std::invalid_argument("step_implicit_euler: tau must be > 0");
  require_grid(kernel.grid(), state, "step_implicit_euler state");
  require_grid(kernel.grid(), source_slice, "step_implicit_euler source");
  Field datum = state;
  for (std::size_t i : kernel.grid().interior_nodes())
    datum.set(i, state[i] + tau * source_slice[i]);
  auto prob = ResolventProblem::make(kernel, std::move(datum), tau, options);
  prob.initial_guess = state;
  return resolvent(prob);
}

}  // namespace fracp
