#include "fracp/nonlocal.hpp"

#include <cmath>

#include "fracp/parallel.hpp"

namespace fracp {

double signed_power(double t, double p) {
  if (t == 0.0) return 0.0;
  if (p == 2.0) return t;
  const double a = std::abs(t);
  if (p == 3.0) return a * t;
  return std::copysign(std::pow(a, p - 1.0), t);
}

double abs_power(double t, double p) {
  if (p == 2.0) return t * t;
  const double a = std::abs(t);
  if (p == 3.0) return a * a * a;
  return std::pow(a, p);
}

double gagliardo_p(const KernelTable& kernel, const Field& u) {
  const Grid& g = kernel.grid();
  require_grid(g, u, "gagliardo_p");
  const double p = kernel.p();
  const auto& pairs = g.pairs();
  const auto weights = kernel.weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k)
    sum += weights[k] * abs_power(u[pairs[k].first] - u[pairs[k].second], p);
  double tail = 0.0;
  for (std::size_t i : g.interior_nodes()) tail += kernel.tail(i) * abs_power(u[i], p);
  return 2.0 * (sum + g.cell_volume() * tail);
}

double energy(const KernelTable& kernel, const Field& u) {
  return gagliardo_p(kernel, u) / (2.0 * kernel.p());
}

Field apply_operator(const KernelTable& kernel, const Field& u, int threads) {
  const Grid& g = kernel.grid();
  require_grid(g, u, "apply_operator");
  if (threads <= 0) threads = default_threads();
  const double p = kernel.p();
  const double inv_w = 1.0 / g.cell_volume();
  const auto& interior = g.interior_nodes();
  std::vector<double> out(g.node_count(), 0.0);
  parallel_for(interior.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const std::size_t i = interior[r];
      const auto row = kernel.row(r);
      const double ui = u[i];
      double acc = 0.0;
      for (std::size_t k = 0; k < row.partners.size(); ++k)
        acc += row.weights[k] * signed_power(ui - u[row.partners[k]], p);
      out[i] = acc * inv_w + kernel.tail(i) * signed_power(ui, p);
    }
  });
  return Field(u.grid_ptr(), std::move(out));
}

double pairing(const KernelTable& kernel, const Field& u, const Field& v) {
  const Grid& g = kernel.grid();
  require_grid(g, u, "pairing");
  require_grid(g, v, "pairing");
  const double p = kernel.p();
  const auto& pairs = g.pairs();
  const auto weights = kernel.weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    sum += weights[k] * signed_power(u[i] - u[j], p) * (v[i] - v[j]);
  }
  double tail = 0.0;
  for (std::size_t i : g.interior_nodes()) tail += kernel.tail(i) * signed_power(u[i], p) * v[i];
  return sum + g.cell_volume() * tail;
}

}  // namespace fracp
