#include "fracp/order_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracp {

VarOrderField::VarOrderField(Evaluator evaluator, double s_minus, double s_plus, std::string name)
    : evaluator_(std::move(evaluator)), s_minus_(s_minus), s_plus_(s_plus), name_(std::move(name)) {
  if (!evaluator_) throw std::invalid_argument("order field needs an evaluator");
  if (!(s_minus > 0.0 && s_minus <= s_plus && s_plus < 1.0))
    throw std::invalid_argument("order bounds must satisfy 0 < s_minus <= s_plus < 1");
}

VarOrderField VarOrderField::constant(double s0) {
  return {[s0](const Point&, const Point&) { return s0; }, s0, s0, "constant"};
}

VarOrderField VarOrderField::affine_in_distance(double s0, double slope, double cap) {
  if (!(slope >= 0.0) || !(cap > 0.0))
    throw std::invalid_argument("affine order needs slope >= 0 and cap > 0");
  auto eval = [s0, slope, cap](const Point& x, const Point& y) {
    const double dx = x[0] - y[0];
    const double dy = x[1] - y[1];
    return s0 + slope * std::min(cap, std::sqrt(dx * dx + dy * dy));
  };
  return {eval, s0, s0 + slope * cap, "affine"};
}

VarOrderField VarOrderField::smooth_bump(double s0, double amplitude, const Point& center,
                                         double width) {
  if (!(amplitude >= 0.0) || !(width > 0.0))
    throw std::invalid_argument("bump order needs amplitude >= 0 and width > 0");
  auto eval = [=](const Point& x, const Point& y) {
    const double mx = 0.5 * (x[0] + y[0]) - center[0];
    const double my = 0.5 * (x[1] + y[1]) - center[1];
    return s0 + amplitude * std::exp(-(mx * mx + my * my) / (2.0 * width * width));
  };
  return {eval, s0, s0 + amplitude, "bump"};
}

}  // namespace fracp
