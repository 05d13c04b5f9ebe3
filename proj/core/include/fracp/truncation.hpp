#pragma once

#include <utility>

#include "fracp/field.hpp"

namespace fracp {

/// Level k >= 0 of the truncation T_k(r) = min(k, max(r, -k)).
class TruncationLevel {
 public:
  explicit TruncationLevel(double k);
  double value() const { return k_; }

 private:
  double k_;
};

/// Height h > 0 of the plateau function H_h: identity on |r| < h, a quadratic
/// blend on h <= |r| <= h + 1, constant +-(h + 1/2) beyond.
class PlateauFn {
 public:
  explicit PlateauFn(double h);
  double height() const { return h_; }

 private:
  double h_;
};

double truncate(TruncationLevel k, double r);

/// Theta_k(r) = integral_0^r T_k(s) ds.
double theta(TruncationLevel k, double r);

/// (H_h(r), H_h'(r)).
std::pair<double, double> plateau(PlateauFn h, double r);

/// T_k applied nodewise; exterior zeros are preserved because T_k(0) = 0.
Field truncate(TruncationLevel k, const Field& u);

}  // namespace fracp
