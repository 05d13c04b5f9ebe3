#include <gtest/gtest.h>

#include <random>

#include "fracp/truncation.hpp"
#include "support.hpp"

namespace fracp {
namespace {

TEST(Truncate, Values) {
  const TruncationLevel two(2.0);
  EXPECT_EQ(truncate(two, 3.0), 2.0);
  EXPECT_EQ(truncate(two, -3.0), -2.0);
  EXPECT_EQ(truncate(two, 1.0), 1.0);
  for (double r : {-5.0, -0.1, 0.0, 7.5}) EXPECT_EQ(truncate(TruncationLevel(0.0), r), 0.0);
  EXPECT_THROW(TruncationLevel(-1.0), std::invalid_argument);
}

TEST(Truncate, Nonexpansive) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-10.0, 10.0), kd(0.0, 5.0);
  for (int t = 0; t < 10000; ++t) {
    const TruncationLevel k(kd(rng));
    const double a = d(rng), b = d(rng);
    EXPECT_LE(std::abs(truncate(k, a) - truncate(k, b)), std::abs(a - b));
  }
}

TEST(Truncate, FieldKeepsExteriorZeros) {
  const auto grid = testing::square_grid(4, 0.3);
  std::mt19937_64 rng(5);
  const Field u = testing::random_field(grid, rng, -3.0, 3.0);
  const Field t = truncate(TruncationLevel(1.0), u);
  for (std::size_t i = 0; i < grid->node_count(); ++i) {
    if (!grid->is_interior(i)) { EXPECT_EQ(t[i], 0.0); }
    EXPECT_LE(std::abs(t[i]), 1.0);
  }
}

TEST(Theta, Values) {
  const TruncationLevel one(1.0);
  EXPECT_DOUBLE_EQ(theta(one, 0.5), 0.125);
  EXPECT_DOUBLE_EQ(theta(one, 2.0), 1.5);
  EXPECT_DOUBLE_EQ(theta(one, -2.0), 1.5);
  for (double k : {0.0, 0.5, 3.0}) EXPECT_EQ(theta(TruncationLevel(k), 0.0), 0.0);
}

TEST(Theta, BoundedByKAbsR) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-10.0, 10.0), kd(0.0, 5.0);
  for (int t = 0; t < 10000; ++t) {
    const TruncationLevel k(kd(rng));
    const double r = d(rng);
    EXPECT_GE(theta(k, r), 0.0);
    EXPECT_LE(theta(k, r), k.value() * std::abs(r) + 1e-15);
  }
}

TEST(Theta, IsPrimitiveOfTruncation) {
  // Composite Simpson on [0, r] with a node at the kink |s| = k.
  const TruncationLevel k(1.3);
  for (int a = 0; a < 100; ++a) {
    const double r = -4.0 + 8.0 * a / 99.0;
    auto simpson = [&](double lo, double hi) {
      const int n = 200;
      const double h = (hi - lo) / n;
      double s = truncate(k, lo) + truncate(k, hi);
      for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * truncate(k, lo + i * h);
      return s * h / 3.0;
    };
    const double kink = std::copysign(std::min(std::abs(r), k.value()), r);
    const double integral = simpson(0.0, kink) + simpson(kink, r);
    EXPECT_NEAR(theta(k, r), integral, 1e-10) << r;
  }
}

TEST(Plateau, Branches) {
  const PlateauFn h(1.0);
  EXPECT_EQ(plateau(h, 0.5), std::pair(0.5, 1.0));
  EXPECT_EQ(plateau(h, 3.0).second, 0.0);
  EXPECT_EQ(plateau(h, -3.0).second, 0.0);
  EXPECT_NEAR(plateau(h, 1.5).second, 0.5, 1e-15);
  EXPECT_THROW(PlateauFn(0.0), std::invalid_argument);
}

TEST(Plateau, ContinuousAtBranchPoints) {
  for (double hv : {0.5, 1.0, 3.0}) {
    const PlateauFn h(hv);
    for (double edge : {hv, hv + 1.0})
      for (double sign : {-1.0, 1.0}) {
        const double r = sign * edge;
        const auto below = plateau(h, std::nextafter(r, 0.0));
        const auto above = plateau(h, std::nextafter(r, sign * 1e9));
        EXPECT_NEAR(below.first, above.first, 1e-12);
        EXPECT_NEAR(below.second, above.second, 1e-12);
      }
  }
}

TEST(Plateau, LipschitzWithDerivativeInUnitInterval) {
  const PlateauFn h(0.7);
  double prev = plateau(h, -5.0).first;
  for (int a = 1; a <= 2000; ++a) {
    const double r = -5.0 + 10.0 * a / 2000.0;
    const auto [value, slope] = plateau(h, r);
    EXPECT_GE(slope, 0.0);
    EXPECT_LE(slope, 1.0);
    EXPECT_LE(std::abs(value - prev), 10.0 / 2000.0 + 1e-15);
    if (std::abs(r) > 1.7) { EXPECT_EQ(slope, 0.0); }
    prev = value;
  }
}

}  // namespace
}  // namespace fracp
