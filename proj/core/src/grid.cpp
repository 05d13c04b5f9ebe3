#include "fracp/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracp {

void GridSpec::validate() const {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("grid dimension must be 1 or 2, got " +
                                std::to_string(dimension));
  if (cells_per_axis < 2)
    throw std::invalid_argument("cells_per_axis must be >= 2, got " +
                                std::to_string(cells_per_axis));
  if (!(collar_radius > 0.0))
    throw std::invalid_argument("collar_radius must be > 0");
  if (!(time_horizon > 0.0))
    throw std::invalid_argument("time_horizon must be > 0");
  for (int a = 0; a < dimension; ++a)
    if (!(box_lo[a] < box_hi[a]))
      throw std::invalid_argument("box_lo must be < box_hi on axis " + std::to_string(a));
}

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  spec_.validate();
  const int dim = spec_.dimension;
  const int m = spec_.cells_per_axis;

  cell_volume_ = 1.0;
  for (int a = 0; a < dim; ++a) {
    cell_width_[a] = (spec_.box_hi[a] - spec_.box_lo[a]) / m;
    cell_volume_ *= cell_width_[a];
    // The small relative shave keeps R = c*h from rounding up to c+1 cells.
    collar_cells_[a] =
        static_cast<int>(std::ceil(spec_.collar_radius / cell_width_[a] * (1.0 - 1e-12)));
    collar_cells_[a] = std::max(collar_cells_[a], 1);
    shape_[a] = m + 2 * collar_cells_[a];
  }

  const int nx = shape_[0];
  const int ny = dim == 2 ? shape_[1] : 1;
  nodes_.reserve(static_cast<std::size_t>(nx) * ny);
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      Point x{0.0, 0.0};
      bool inside = true;
      const int idx[2] = {ix, iy};
      for (int a = 0; a < dim; ++a) {
        const int cell = idx[a] - collar_cells_[a];
        x[a] = spec_.box_lo[a] + (cell + 0.5) * cell_width_[a];
        inside = inside && cell >= 0 && cell < m;
      }
      if (inside) interior_nodes_.push_back(nodes_.size());
      interior_.push_back(inside ? 1 : 0);
      nodes_.push_back(x);
    }
  }

  const std::size_t n = nodes_.size();
  const std::size_t ni = interior_nodes_.size();
  pairs_.reserve(ni * (ni - 1) / 2 + ni * (n - ni));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (interior_[i] || interior_[j]) pairs_.emplace_back(i, j);
}

double Grid::domain_measure() const {
  double m = 1.0;
  for (int a = 0; a < spec_.dimension; ++a) m *= spec_.box_hi[a] - spec_.box_lo[a];
  return m;
}

Point Grid::outer_lo() const {
  Point p{0.0, 0.0};
  for (int a = 0; a < spec_.dimension; ++a)
    p[a] = spec_.box_lo[a] - collar_cells_[a] * cell_width_[a];
  return p;
}

Point Grid::outer_hi() const {
  Point p{0.0, 0.0};
  for (int a = 0; a < spec_.dimension; ++a)
    p[a] = spec_.box_hi[a] + collar_cells_[a] * cell_width_[a];
  return p;
}

double Grid::distance(std::size_t i, std::size_t j) const {
  const double dx = nodes_[i][0] - nodes_[j][0];
  const double dy = nodes_[i][1] - nodes_[j][1];
  return std::sqrt(dx * dx + dy * dy);
}

GridPtr build_grid(const GridSpec& spec) { return std::make_shared<const Grid>(spec); }

}  // namespace fracp
