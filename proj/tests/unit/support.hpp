#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fracp/evolution.hpp"
#include "fracp/field.hpp"
#include "fracp/grid.hpp"
#include "fracp/kernel.hpp"
#include "fracp/order_field.hpp"

namespace fracp::testing {

inline GridPtr line_grid(int cells, double collar = 0.25, double lo = 0.0, double hi = 1.0) {
  GridSpec spec;
  spec.dimension = 1;
  spec.box_lo = {lo, 0.0};
  spec.box_hi = {hi, 1.0};
  spec.cells_per_axis = cells;
  spec.collar_radius = collar;
  return build_grid(spec);
}

inline GridPtr square_grid(int cells, double collar = 0.25, double lo = 0.0, double hi = 1.0) {
  GridSpec spec;
  spec.dimension = 2;
  spec.box_lo = {lo, lo};
  spec.box_hi = {hi, hi};
  spec.cells_per_axis = cells;
  spec.collar_radius = collar;
  return build_grid(spec);
}

/// The variable order used throughout the acceptance suite.
inline VarOrderField reference_order() { return VarOrderField::affine_in_distance(0.3, 0.2); }

/// Order written out by hand, for oracles that must not share code with the library.
inline double reference_order_value(const Point& x, const Point& y, int dim) {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) r2 += (x[a] - y[a]) * (x[a] - y[a]);
  return 0.3 + 0.2 * std::min(1.0, std::sqrt(r2));
}

inline Field random_field(const GridPtr& grid, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return Field::from_function(grid, [&](const Point&) { return dist(rng); });
}

/// Independent ordered-pair sum sum_{i != j, not both exterior} w^2 |u_i - u_j|^p / r^(N + p s).
inline double brute_force_seminorm(const Grid& grid, const Field& u, double p,
                                   double (*order)(const Point&, const Point&, int)) {
  const int dim = grid.dimension();
  const double w = grid.cell_volume();
  double total = 0.0;
  for (std::size_t i = 0; i < grid.node_count(); ++i)
    for (std::size_t j = 0; j < grid.node_count(); ++j) {
      if (i == j || (!grid.is_interior(i) && !grid.is_interior(j))) continue;
      const Point& x = grid.node(i);
      const Point& y = grid.node(j);
      double r2 = 0.0;
      for (int a = 0; a < dim; ++a) r2 += (x[a] - y[a]) * (x[a] - y[a]);
      const double s = order(x, y, dim);
      total += w * w * std::pow(std::abs(u[i] - u[j]), p) / std::pow(std::sqrt(r2), dim + p * s);
    }
  return total;
}

/// Problem with a time-independent source.
inline ParabolicProblem make_problem(const KernelTable& kernel, const Field& initial, const Field& source,
                                     double horizon, int steps) {
  ParabolicProblem prob;
  prob.kernel = &kernel;
  prob.initial = initial;
  prob.source = [source](double) { return source; };
  prob.horizon = horizon;
  prob.steps = steps;
  return prob;
}

}  // namespace fracp::testing
