#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracp/field.hpp"
#include "fracp/kernel.hpp"
#include "fracp/resolvent.hpp"

namespace fracp {

/// u_t + (-Delta)_p^s u = f on the box over (0, T], u = u0 at t = 0, u = 0 outside.
struct ParabolicProblem {
  const KernelTable* kernel = nullptr;
  Field initial;
  /// f(., t); must return fields on the kernel's grid.
  std::function<Field(double)> source;
  double horizon = 1.0;
  int steps = 1;
  SolverOptions options;

  double tau() const { return horizon / steps; }
  void validate() const;
};

/// Initial field and the source sampled at the right endpoints t_n = n tau,
/// n = 1..K (source[n-1] belongs to step n).
struct SampledData {
  Field initial;
  std::vector<Field> source;
  double tau = 0.0;

  int steps() const { return static_cast<int>(source.size()); }
  /// sum_n tau ||f^n||_1
  double source_l1() const;
};

SampledData sample_data(const ParabolicProblem& problem);

struct StepDiagnostics {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// States u^0..u^K of the implicit Euler scheme. When a step fails the
/// trajectory holds the states computed so far and `complete` is false.
struct Trajectory {
  std::vector<Field> states;
  double tau = 0.0;
  std::vector<StepDiagnostics> diagnostics;
  bool complete = true;
  std::string failure;

  int steps() const { return static_cast<int>(states.size()) - 1; }
  double time(int k) const { return k * tau; }
  const Field& final_state() const { return states.back(); }
  /// sum over steps of the sup-norm Euler-Lagrange residual
  double accumulated_residual() const;
  int total_iterations() const;
};

Trajectory solve_sampled(const KernelTable& kernel, const SampledData& data,
                         const SolverOptions& options = {});

Trajectory solve_parabolic(const ParabolicProblem& problem);

/// sup_k ||u_K(t_k) - u_2K(t_k)||_1 between K and 2K steps: the Crandall-Liggett
/// consistency diagnostic. Reported, never asserted by the driver.
double refinement_gap(const ParabolicProblem& problem);

}  // namespace fracp
