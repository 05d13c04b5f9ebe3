#include <gtest/gtest.h>

#include <set>

#include "fracp/grid.hpp"
#include "fracp/order_field.hpp"
#include "support.hpp"

namespace fracp {
namespace {

TEST(Grid, OneDimensionalCounting) {
  const auto grid = testing::line_grid(4, 0.25);
  EXPECT_EQ(grid->node_count(), 6u);
  EXPECT_EQ(grid->interior_count(), 4u);
  EXPECT_DOUBLE_EQ(grid->cell_volume(), 0.25);
  EXPECT_DOUBLE_EQ(grid->node(0)[0], -0.125);
  EXPECT_DOUBLE_EQ(grid->node(5)[0], 1.125);
}

TEST(Grid, TwoDimensionalCounting) {
  const auto grid = testing::square_grid(2, 0.5);
  EXPECT_EQ(grid->node_count(), 16u);
  EXPECT_EQ(grid->interior_count(), 4u);
  EXPECT_DOUBLE_EQ(grid->cell_volume(), 0.25);
}

TEST(Grid, NodeCountFormula) {
  for (int m : {3, 8, 13})
    for (double collar : {0.05, 0.2, 0.37}) {
      const auto g1 = testing::line_grid(m, collar);
      const int c = static_cast<int>(std::ceil(collar * m - 1e-9));
      EXPECT_EQ(g1->node_count(), static_cast<std::size_t>(m + 2 * c));
      const auto g2 = testing::square_grid(m, collar);
      EXPECT_EQ(g2->node_count(), static_cast<std::size_t>((m + 2 * c) * (m + 2 * c)));
    }
}

TEST(Grid, RejectsInvalidSpecs) {
  EXPECT_THROW(testing::line_grid(1), std::invalid_argument);
  EXPECT_THROW(testing::line_grid(4, 0.0), std::invalid_argument);
  EXPECT_THROW(testing::line_grid(4, 0.25, 1.0, 0.0), std::invalid_argument);
  GridSpec spec;
  spec.dimension = 3;
  EXPECT_THROW(build_grid(spec), std::invalid_argument);
  spec.dimension = 1;
  spec.time_horizon = 0.0;
  EXPECT_THROW(build_grid(spec), std::invalid_argument);
}

TEST(Grid, InteriorIsHalfOpenBox) {
  const auto grid = testing::square_grid(5, 0.3, -1.0, 2.0);
  for (std::size_t i = 0; i < grid->node_count(); ++i) {
    const Point& x = grid->node(i);
    const bool inside = x[0] >= -1.0 && x[0] < 2.0 && x[1] >= -1.0 && x[1] < 2.0;
    EXPECT_EQ(grid->is_interior(i), inside) << i;
  }
}

TEST(Grid, PairsCoverDOmegaExactly) {
  const auto grid = testing::square_grid(3, 0.4);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [i, j] : grid->pairs()) {
    EXPECT_LT(i, j);
    EXPECT_TRUE(grid->is_interior(i) || grid->is_interior(j));
    seen.insert({i, j});
  }
  EXPECT_EQ(seen.size(), grid->pairs().size());
  const std::size_t ni = grid->interior_count();
  const std::size_t ne = grid->node_count() - ni;
  EXPECT_EQ(grid->pairs().size(), ni * (ni - 1) / 2 + ni * ne);
}

TEST(OrderField, BoundsValidated) {
  EXPECT_THROW(VarOrderField::constant(0.0), std::invalid_argument);
  EXPECT_THROW(VarOrderField::constant(1.0), std::invalid_argument);
  EXPECT_THROW(VarOrderField::affine_in_distance(0.5, 0.6), std::invalid_argument);
  const auto s = VarOrderField::affine_in_distance(0.3, 0.2);
  EXPECT_DOUBLE_EQ(s.s_minus(), 0.3);
  EXPECT_DOUBLE_EQ(s.s_plus(), 0.5);
}

TEST(OrderField, BuiltinsAreSymmetric) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 2.0);
  const VarOrderField fields[] = {VarOrderField::constant(0.4),
                                  VarOrderField::affine_in_distance(0.3, 0.2),
                                  VarOrderField::smooth_bump(0.3, 0.2, {0.5, 0.5}, 0.2)};
  for (const auto& s : fields)
    for (int t = 0; t < 1000; ++t) {
      const Point x{d(rng), d(rng)}, y{d(rng), d(rng)};
      EXPECT_DOUBLE_EQ(s(x, y), s(y, x));
      EXPECT_GE(s(x, y), s.s_minus());
      EXPECT_LE(s(x, y), s.s_plus());
    }
}

}  // namespace
}  // namespace fracp
