#include "fracp/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracp {

TruncationLevel::TruncationLevel(double k) : k_(k) {
  if (!(k >= 0.0)) throw std::invalid_argument("truncation level must be >= 0");
}

PlateauFn::PlateauFn(double h) : h_(h) {
  if (!(h > 0.0)) throw std::invalid_argument("plateau height must be > 0");
}

double truncate(TruncationLevel k, double r) {
  return std::min(k.value(), std::max(r, -k.value()));
}

double theta(TruncationLevel k, double r) {
  const double a = std::abs(r);
  const double kv = k.value();
  if (a <= kv) return 0.5 * r * r;
  return kv * a - 0.5 * kv * kv;
}

std::pair<double, double> plateau(PlateauFn height, double r) {
  const double h = height.height();
  const double a = std::abs(r);
  const double sign = r < 0.0 ? -1.0 : 1.0;
  if (a < h) return {r, 1.0};
  if (a <= h + 1.0) {
    const double d = a - (h + 1.0);
    return {sign * ((h + 0.5) - 0.5 * d * d), h + 1.0 - a};
  }
  return {sign * (h + 0.5), 0.0};
}

Field truncate(TruncationLevel k, const Field& u) {
  return u.map([k](double r) { return truncate(k, r); });
}

}  // namespace fracp
