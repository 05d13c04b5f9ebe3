#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracp/evolution.hpp"
#include "fracp/field.hpp"
#include "fracp/kernel.hpp"
#include "fracp/truncation.hpp"

namespace fracp {

/// Verdict of one inequality: passed iff slack = rhs - lhs >= -tolerance.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  static CheckReport make(std::string name, double lhs, double rhs, double tolerance);
  /// Single human-readable line.
  std::string text() const;
};

/// Absolute floor of every inequality tolerance; solver residuals are added on top.
inline constexpr double kCheckAbsoluteTolerance = 1e-8;

/// D_h = {(a, b): min(|a|,|b|) <= h and max(|a|,|b|) >= h + 1, or a b < 0}.
struct TailSet {
  double h;
  explicit TailSet(double level);
  bool contains(double a, double b) const;
};

/// phi(x, t) = amplitude * (1 - rho^2)_+^2 * (1 - t / horizon), rho = |x - center| / radius.
/// The support ball must lie strictly inside the box; phi(., horizon) = 0.
struct TestFunction {
  Point center{0.5, 0.5};
  double radius = 0.25;
  double amplitude = 1.0;
  double horizon = 1.0;

  /// Throws std::invalid_argument if the support leaves the box or horizon <= 0.
  void validate(const Grid& grid) const;
  double value(const Point& x, double t) const;
  double time_derivative(const Point& x, double t) const;
  Field at(const GridPtr& grid, double t) const;
};

/// Bounded renormalization H with compactly supported H'.
struct Renormalizer {
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  static Renormalizer from_plateau(PlateauFn h, double offset = 0.0);
};

CheckReport check_l1_contraction(const Trajectory& u, const Trajectory& v, const SampledData& data_u,
                                 const SampledData& data_v);

/// Caller asserts f <= g and u0 <= v0; passes iff u <= v everywhere up to tolerance.
CheckReport check_comparison(const Trajectory& u, const Trajectory& v);

/// 1/2 sum_n tau [T_k(u^n)]^p <= k (||f||_1 + ||u0||_1).
CheckReport check_energy_estimate(const KernelTable& kernel, const Trajectory& traj,
                                  const SampledData& data, double k);

/// sum_n tau sum_{(u_i, u_j) in D_h} 2 sigma_ij |u_i - u_j|^(p-1), tail pairs included.
double renormalization_tail(const KernelTable& kernel, const Trajectory& traj, double h);

struct RenormalizedTerms {
  double time_term = 0.0;     // -int int H(u) phi_t
  double initial_term = 0.0;  // -int H(u0) phi(., 0)
  double pair_term = 0.0;     // 1/2 int int_{D_Omega} |du|^(p-2) du d(H'(u) phi) dsigma
  double source_term = 0.0;   // int int f H'(u) phi
  double residual = 0.0;      // |time + initial + pair - source|
};

/// Renormalized identity evaluated on the piecewise-constant-in-time
/// interpolant (u^n on (t_{n-1}, t_n]); phi_t is integrated exactly.
RenormalizedTerms renormalized_residual(const KernelTable& kernel, const Trajectory& traj,
                                        const SampledData& data, const Renormalizer& h,
                                        const TestFunction& phi);

struct EntropyTerms {
  double theta_final = 0.0;    // int Theta_k(u - phi)(T)
  double theta_initial = 0.0;  // int Theta_k(u0 - phi(0))
  double time_term = 0.0;      // int int phi_t T_k(u - phi)
  double pair_term = 0.0;      // 1/2 int int_{D_Omega} |du|^(p-2) du d(T_k(u - phi)) dsigma
  double source_term = 0.0;    // int int f T_k(u - phi)
  CheckReport report;
};

/// Entropy inequality. The phi_t term is integrated exactly along the state of
/// the previous step, under which the implicit Euler solution satisfies the
/// inequality up to its solver residuals.
EntropyTerms entropy_residual(const KernelTable& kernel, const Trajectory& traj,
                              const SampledData& data, const TestFunction& phi, double k);

/// (w sum_interior |u_i|^p) / [u]^p. Rejects the zero field.
double poincare_ratio(const KernelTable& kernel, const Field& u);

/// C = 1 / (2 c m(Omega)^(-p s_plus / N)).
double poincare_constant(const KernelTable& kernel);

}  // namespace fracp
