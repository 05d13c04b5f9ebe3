#include "fracp/experiment/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracp::experiment {

VarOrderField make_order(const OrderSpec& spec) {
  if (spec.kind == "constant") return VarOrderField::constant(spec.s0);
  if (spec.kind == "affine") return VarOrderField::affine_in_distance(spec.s0, spec.slope, spec.cap);
  if (spec.kind == "bump")
    return VarOrderField::smooth_bump(spec.s0, spec.amplitude, spec.center, spec.width);
  throw std::invalid_argument("unknown order kind '" + spec.kind + "'");
}

Field make_profile(const ProfileSpec& spec, const GridPtr& grid) {
  const int dim = grid->dimension();
  auto dist = [&](const Point& x) {
    const double dx = x[0] - spec.center[0];
    const double dy = dim == 2 ? x[1] - spec.center[1] : 0.0;
    return std::sqrt(dx * dx + dy * dy);
  };
  if (spec.kind == "zero") return Field(grid);
  if (spec.kind == "constant")
    return Field::from_function(grid, [&](const Point&) { return spec.amplitude; });
  if (spec.kind == "gaussian") {
    return Field::from_function(grid, [&](const Point& x) {
      const double r = dist(x);
      return spec.amplitude * std::exp(-r * r / (2.0 * spec.width * spec.width));
    });
  }
  if (spec.kind == "power") {
    const auto& h = grid->cell_width();
    const double floor = 0.25 * (dim == 2 ? std::min(h[0], h[1]) : h[0]);
    return Field::from_function(grid, [&](const Point& x) {
      return spec.amplitude * std::pow(std::max(dist(x), floor), -spec.alpha);
    });
  }
  throw std::invalid_argument("unknown profile kind '" + spec.kind + "'");
}

}  // namespace fracp::experiment
