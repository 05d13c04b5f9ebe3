#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracp/field.hpp"
#include "fracp/kernel.hpp"

namespace fracp {

/// Tolerance policy shared by the resolvent and time-stepping drivers.
struct SolverOptions {
  /// Stop when ||u + lambda A(u) - datum||_inf <= relative_tolerance * (1 + ||datum||_inf).
  double relative_tolerance = 1e-10;
  int max_iterations = 100000;
  /// Keep the objective decrease of every accepted step in the result.
  bool record_decreases = false;
};

/// Proximal problem: minimize lambda * energy(u) + 1/2 ||u - datum||_w^2 over
/// fields with exterior zeros. Its Euler-Lagrange equation is
/// u + lambda A(u) = datum.
struct ResolventProblem {
  const KernelTable* kernel = nullptr;
  Field datum;
  double step = 1.0;
  double tolerance = 1e-10;
  int max_iterations = 100000;
  bool record_decreases = false;
  std::optional<Field> initial_guess;

  static ResolventProblem make(const KernelTable& kernel, Field datum, double step,
                               const SolverOptions& options = {});
  void validate() const;
};

struct ResolventResult {
  Field solution;
  int iterations = 0;
  /// Final sup-norm Euler-Lagrange residual.
  double residual = 0.0;
  bool converged = false;
  std::string message;
  /// Objective change of each accepted step (all strictly negative), when requested.
  std::vector<double> decreases;
};

/// Descent iterations with Armijo backtracking. The direction solves
/// (I + lambda K) d = -r, K the Hessian of energy / w with |u_i - u_j|^(p-2)
/// floored away from zero when p < 2; for p = 2 the first step is the exact
/// linear solve. Non-convergence is reported in the result, never thrown.
ResolventResult resolvent(const ResolventProblem& problem);

/// lambda * energy(u) + 1/2 ||u - datum||_w^2
double proximal_objective(const KernelTable& kernel, const Field& u, const Field& datum,
                          double step);

/// One fully implicit step: (u_next - state)/tau + A(u_next) = source_slice.
ResolventResult step_implicit_euler(const KernelTable& kernel, const Field& state,
                                    const Field& source_slice, double tau,
                                    const SolverOptions& options = {});

}  // namespace fracp
