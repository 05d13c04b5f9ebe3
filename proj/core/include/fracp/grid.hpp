#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

namespace fracp {

/// A point in R^N, N <= 2. Unused trailing coordinates are zero.
using Point = std::array<double, 2>;

/// Uniform box discretization of the bounded domain and its exterior collar.
struct GridSpec {
  int dimension = 1;
  Point box_lo{0.0, 0.0};
  Point box_hi{1.0, 1.0};
  int cells_per_axis = 16;
  double collar_radius = 0.25;
  double time_horizon = 1.0;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

/// Cell-centered nodes of the box plus `collar_cells` rings of exterior cells.
///
/// Nodes are numbered row-major over the extended lattice (last axis fastest).
/// `pairs` enumerates the discrete D_Omega: unordered (i, j), i < j, with at
/// least one interior endpoint, sorted lexicographically. Self pairs never
/// appear.
class Grid {
 public:
  explicit Grid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int dimension() const { return spec_.dimension; }
  std::size_t node_count() const { return nodes_.size(); }
  const Point& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<Point>& nodes() const { return nodes_; }
  bool is_interior(std::size_t i) const { return interior_[i] != 0; }
  const std::vector<std::size_t>& interior_nodes() const { return interior_nodes_; }
  std::size_t interior_count() const { return interior_nodes_.size(); }

  double cell_volume() const { return cell_volume_; }
  const Point& cell_width() const { return cell_width_; }
  std::array<int, 2> collar_cells() const { return collar_cells_; }
  std::array<int, 2> lattice_shape() const { return shape_; }

  /// Lebesgue measure of the box.
  double domain_measure() const;
  /// Outer corners of the explicitly represented collar.
  Point outer_lo() const;
  Point outer_hi() const;

  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  double distance(std::size_t i, std::size_t j) const;

 private:
  GridSpec spec_;
  std::vector<Point> nodes_;
  std::vector<unsigned char> interior_;
  std::vector<std::size_t> interior_nodes_;
  double cell_volume_ = 0.0;
  Point cell_width_{0.0, 0.0};
  std::array<int, 2> collar_cells_{0, 0};
  std::array<int, 2> shape_{1, 1};
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const GridSpec& spec);

}  // namespace fracp
