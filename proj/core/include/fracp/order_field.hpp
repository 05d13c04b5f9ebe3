#pragma once

#include <functional>
#include <string>

#include "fracp/grid.hpp"

namespace fracp {

/// Variable fractional order s(x, y) with declared bounds
/// 0 < s_minus <= s <= s_plus < 1. The evaluator must be symmetric in its
/// arguments; assemble_kernel verifies both properties on every pair it visits.
class VarOrderField {
 public:
  using Evaluator = std::function<double(const Point&, const Point&)>;

  VarOrderField(Evaluator evaluator, double s_minus, double s_plus, std::string name = "custom");

  double operator()(const Point& x, const Point& y) const { return evaluator_(x, y); }
  double s_minus() const { return s_minus_; }
  double s_plus() const { return s_plus_; }
  const std::string& name() const { return name_; }

  /// s = s0 everywhere.
  static VarOrderField constant(double s0);
  /// s = s0 + slope * min(cap, |x - y|).
  static VarOrderField affine_in_distance(double s0, double slope, double cap = 1.0);
  /// s = s0 + amplitude * exp(-|(x + y)/2 - center|^2 / (2 width^2)).
  static VarOrderField smooth_bump(double s0, double amplitude, const Point& center, double width);

 private:
  Evaluator evaluator_;
  double s_minus_;
  double s_plus_;
  std::string name_;
};

}  // namespace fracp
