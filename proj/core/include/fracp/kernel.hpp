#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fracp/grid.hpp"
#include "fracp/order_field.hpp"

namespace fracp {

/// Precomputed singular-kernel weights over the discrete D_Omega.
///
/// weight(k) belongs to grid().pairs()[k] and equals
///   w^2 / |x_i - x_j|^(N + p s(x_i, x_j)),
/// the cell-pair quadrature of dsigma. tail(i) is the closed-form integral of
/// |x_i - y|^(-N - p s_plus) over the region beyond the explicit collar; it is
/// zero for exterior nodes. Immutable after construction.
class KernelTable {
 public:
  /// Partners of one interior node, ordered by partner index.
  struct Row {
    std::span<const std::size_t> partners;
    std::span<const double> weights;
  };

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  double p() const { return p_; }
  double s_plus() const { return s_plus_; }
  double s_minus() const { return s_minus_; }

  std::span<const double> weights() const { return weights_; }
  std::span<const double> orders() const { return orders_; }
  double tail(std::size_t node) const { return tail_[node]; }
  std::span<const double> tails() const { return tail_; }

  /// Row of an interior node by its position in grid().interior_nodes().
  Row row(std::size_t interior_rank) const;
  /// Position in interior_nodes(), or npos for exterior nodes.
  std::size_t interior_rank(std::size_t node) const { return rank_[node]; }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Diagnostics recorded during assembly (e.g. p*s_plus >= N).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend KernelTable assemble_kernel(GridPtr, const VarOrderField&, double, int);

  GridPtr grid_;
  double p_ = 2.0;
  double s_minus_ = 0.0;
  double s_plus_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> orders_;
  std::vector<double> tail_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::size_t> row_partners_;
  std::vector<double> row_weights_;
  std::vector<std::string> warnings_;
};

/// Throws std::invalid_argument for p <= 1, for an order value outside its
/// declared bounds, or for an evaluator with s(x, y) != s(y, x).
KernelTable assemble_kernel(GridPtr grid, const VarOrderField& order, double p, int threads = 0);

/// Discrete integral over the exterior of |x_i - y|^(-N - p s): explicit
/// collar couplings sigma_ij / w plus the analytic tail. Rejects exterior nodes.
double exterior_mass(const KernelTable& kernel, std::size_t node);

/// c(N, p, s_plus) * m^(-p s_plus / N) with c from the radial integral over the
/// complement of the ball of measure m: c = |S^{N-1}| omega_N^{q/N} / q, q = p s_plus.
double exterior_mass_lower_bound(int dimension, double p, double s_plus, double measure);

/// Integral of |x - y|^(-N - q) over y outside the axis-aligned box [lo, hi].
/// Exact in 1-D; Gauss-Legendre in angle (per box edge) in 2-D.
double radial_tail(int dimension, const Point& x, const Point& lo, const Point& hi, double q);

}  // namespace fracp
