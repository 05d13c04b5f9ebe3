#include "fracp/kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracp/parallel.hpp"

namespace fracp {

namespace {

constexpr int kGaussPoints = 48;

struct GaussRule {
  std::array<double, kGaussPoints> nodes{};
  std::array<double, kGaussPoints> weights{};
};

// Legendre roots by Newton iteration from the Chebyshev-like initial guess.
GaussRule make_gauss_rule() {
  GaussRule rule;
  constexpr int n = kGaussPoints;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

// Integral of (cos(theta) / a)^q over [t0, t1] within (-pi/2, pi/2).
double edge_integral(double a, double t0, double t1, double q) {
  const auto& rule = gauss_rule();
  const double half = 0.5 * (t1 - t0);
  const double mid = 0.5 * (t1 + t0);
  double sum = 0.0;
  for (int k = 0; k < kGaussPoints; ++k)
    sum += rule.weights[k] * std::pow(std::cos(mid + half * rule.nodes[k]) / a, q);
  return sum * half;
}

}  // namespace

double radial_tail(int dimension, const Point& x, const Point& lo, const Point& hi, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("radial_tail needs q > 0");
  if (dimension == 1) {
    const double left = x[0] - lo[0];
    const double right = hi[0] - x[0];
    return (std::pow(left, -q) + std::pow(right, -q)) / q;
  }
  // In polar coordinates around x the outside of the box is r > rho(theta), and
  // the radial integral of r^{-2-q} r dr is rho^{-q} / q. Along each edge at
  // perpendicular distance a, rho = a / cos(theta - theta_edge).
  const double dxl = x[0] - lo[0], dxh = hi[0] - x[0];
  const double dyl = x[1] - lo[1], dyh = hi[1] - x[1];
  double total = 0.0;
  total += edge_integral(dxh, std::atan2(-dyl, dxh), std::atan2(dyh, dxh), q);  // +x
  total += edge_integral(dxl, std::atan2(-dyh, dxl), std::atan2(dyl, dxl), q);  // -x
  total += edge_integral(dyh, std::atan2(-dxh, dyh), std::atan2(dxl, dyh), q);  // +y
  total += edge_integral(dyl, std::atan2(-dxl, dyl), std::atan2(dxh, dyl), q);  // -y
  return total / q;
}

KernelTable assemble_kernel(GridPtr grid, const VarOrderField& order, double p, int threads) {
  if (!grid) throw std::invalid_argument("assemble_kernel: null grid");
  if (!(p > 1.0)) throw std::invalid_argument("assemble_kernel: exponent p must be > 1");
  if (threads <= 0) threads = default_threads();

  KernelTable k;
  k.grid_ = grid;
  k.p_ = p;
  k.s_minus_ = order.s_minus();
  k.s_plus_ = order.s_plus();

  const Grid& g = *grid;
  const int dim = g.dimension();
  if (p * order.s_plus() >= dim) {
    k.warnings_.push_back("p*s_plus = " + std::to_string(p * order.s_plus()) +
                          " >= N = " + std::to_string(dim) +
                          "; outside the ps(x,y) < N regime");
  }

  const auto& pairs = g.pairs();
  const double w2 = g.cell_volume() * g.cell_volume();
  k.weights_.resize(pairs.size());
  k.orders_.resize(pairs.size());

  constexpr double kSlack = 1e-12;
  parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const auto [i, j] = pairs[idx];
      const Point& xi = g.node(i);
      const Point& xj = g.node(j);
      const double s = order(xi, xj);
      const double s_rev = order(xj, xi);
      if (std::abs(s - s_rev) > kSlack * std::max(1.0, std::abs(s))) {
        throw std::invalid_argument("order field is not symmetric at pair (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (!(s >= order.s_minus() - kSlack && s <= order.s_plus() + kSlack)) {
        throw std::invalid_argument("order value " + std::to_string(s) +
                                    " outside declared bounds at pair (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
      }
      k.orders_[idx] = s;
      k.weights_[idx] = w2 / std::pow(g.distance(i, j), dim + p * s);
    }
  });

  const std::size_t n = g.node_count();
  k.tail_.assign(n, 0.0);
  k.rank_.assign(n, KernelTable::npos);
  const auto& interior = g.interior_nodes();
  for (std::size_t r = 0; r < interior.size(); ++r) k.rank_[interior[r]] = r;

  const Point lo = g.outer_lo();
  const Point hi = g.outer_hi();
  const double q = p * order.s_plus();
  for (std::size_t node : interior) k.tail_[node] = radial_tail(dim, g.node(node), lo, hi, q);

  // Interior adjacency in partner order; pairs are sorted lexicographically,
  // so appending as we sweep keeps every row sorted.
  std::vector<std::size_t> counts(interior.size(), 0);
  for (const auto& [i, j] : pairs) {
    if (k.rank_[i] != KernelTable::npos) ++counts[k.rank_[i]];
    if (k.rank_[j] != KernelTable::npos) ++counts[k.rank_[j]];
  }
  k.row_offsets_.assign(interior.size() + 1, 0);
  for (std::size_t r = 0; r < interior.size(); ++r)
    k.row_offsets_[r + 1] = k.row_offsets_[r] + counts[r];
  k.row_partners_.resize(k.row_offsets_.back());
  k.row_weights_.resize(k.row_offsets_.back());
  std::vector<std::size_t> cursor(k.row_offsets_.begin(), k.row_offsets_.end() - 1);
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto [i, j] = pairs[idx];
    if (const auto ri = k.rank_[i]; ri != KernelTable::npos) {
      k.row_partners_[cursor[ri]] = j;
      k.row_weights_[cursor[ri]++] = k.weights_[idx];
    }
    if (const auto rj = k.rank_[j]; rj != KernelTable::npos) {
      k.row_partners_[cursor[rj]] = i;
      k.row_weights_[cursor[rj]++] = k.weights_[idx];
    }
  }
  return k;
}

KernelTable::Row KernelTable::row(std::size_t interior_rank) const {
  const std::size_t b = row_offsets_[interior_rank];
  const std::size_t e = row_offsets_[interior_rank + 1];
  return {std::span<const std::size_t>(row_partners_).subspan(b, e - b),
          std::span<const double>(row_weights_).subspan(b, e - b)};
}

double exterior_mass(const KernelTable& kernel, std::size_t node) {
  const Grid& g = kernel.grid();
  if (node >= g.node_count() || !g.is_interior(node))
    throw std::invalid_argument("exterior_mass: node " + std::to_string(node) + " is not interior");
  const auto row = kernel.row(kernel.interior_rank(node));
  double sum = 0.0;
  for (std::size_t k = 0; k < row.partners.size(); ++k)
    if (!g.is_interior(row.partners[k])) sum += row.weights[k];
  return sum / g.cell_volume() + kernel.tail(node);
}

double exterior_mass_lower_bound(int dimension, double p, double s_plus, double measure) {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("exterior_mass_lower_bound: dimension must be 1 or 2");
  const double q = p * s_plus;
  const double sphere = dimension == 1 ? 2.0 : 2.0 * std::numbers::pi;
  const double ball = dimension == 1 ? 2.0 : std::numbers::pi;
  const double c = sphere * std::pow(ball, q / dimension) / q;
  return c * std::pow(measure, -q / dimension);
}

}  // namespace fracp
