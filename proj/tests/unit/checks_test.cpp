#include <gtest/gtest.h>

#include <random>

#include "fracp/checks.hpp"
#include "fracp/nonlocal.hpp"
#include "support.hpp"

namespace fracp {
namespace {

struct Solved {
  SampledData data;
  Trajectory traj;
};

Solved solve(const KernelTable& kernel, const Field& u0, const Field& f, double horizon, int steps) {
  const auto prob = testing::make_problem(kernel, u0, f, horizon, steps);
  Solved r{sample_data(prob), solve_parabolic(prob)};
  EXPECT_TRUE(r.traj.complete);
  return r;
}

Field gaussian(const GridPtr& grid, double amp, double center, double width) {
  return Field::from_function(grid, [=](const Point& x) {
    double r2 = (x[0] - center) * (x[0] - center);
    if (grid->dimension() == 2) r2 += (x[1] - center) * (x[1] - center);
    return amp * std::exp(-r2 / (2 * width * width));
  });
}

TestFunction bump(double amp, double horizon, double radius = 0.3) {
  TestFunction phi;
  phi.center = {0.5, 0.5};
  phi.radius = radius;
  phi.amplitude = amp;
  phi.horizon = horizon;
  return phi;
}

TEST(TailSet, Membership) {
  const TailSet d(1.0);
  EXPECT_TRUE(d.contains(0.5, 2.5));
  EXPECT_TRUE(d.contains(-2.0, 1.0));
  EXPECT_TRUE(d.contains(0.1, -0.1));
  EXPECT_FALSE(d.contains(0.5, 1.5));
  EXPECT_FALSE(d.contains(1.5, 3.0));
  EXPECT_FALSE(d.contains(0.0, 0.0));
  EXPECT_NO_THROW(TailSet(0.0));
  EXPECT_THROW(TailSet(-1.0), std::invalid_argument);
  // Membership is not monotone in h.
  EXPECT_FALSE(TailSet(1.0).contains(1.5, 4.5));
  EXPECT_TRUE(TailSet(2.0).contains(1.5, 4.5));
}

TEST(TestFunctionTest, SupportAndTerminalValue) {
  const auto grid = testing::square_grid(8);
  const TestFunction phi = bump(1.0, 2.0);
  EXPECT_NO_THROW(phi.validate(*grid));
  EXPECT_EQ(phi.at(grid, 2.0).max_abs(), 0.0);
  EXPECT_DOUBLE_EQ(phi.value({0.5, 0.5}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(phi.time_derivative({0.5, 0.5}, 0.3), -0.5);
  EXPECT_EQ(phi.value({0.85, 0.5}, 0.0), 0.0);
  EXPECT_THROW(bump(1.0, 1.0, 0.6).validate(*grid), std::invalid_argument);
}

TEST(L1Contraction, IdenticalProblems) {
  std::mt19937_64 rng(41);
  const auto grid = testing::line_grid(16);
  const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.5);
  const Field u0 = testing::random_field(grid, rng), f = testing::random_field(grid, rng);
  const Solved a = solve(kernel, u0, f, 0.5, 5);
  const auto report = check_l1_contraction(a.traj, a.traj, a.data, a.data);
  EXPECT_EQ(report.lhs, 0.0);
  EXPECT_TRUE(report.passed);
}

TEST(L1Contraction, AgainstZeroSolutionAndPerturbedSource) {
  std::mt19937_64 rng(42);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto grid = testing::line_grid(16);
    const auto kernel = assemble_kernel(grid, testing::reference_order(), p);
    const Field u0 = testing::random_field(grid, rng), f = testing::random_field(grid, rng);
    const Solved a = solve(kernel, u0, f, 0.5, 5);
    const Solved zero = solve(kernel, Field(grid), Field(grid), 0.5, 5);
    const auto r0 = check_l1_contraction(a.traj, zero.traj, a.data, zero.data);
    EXPECT_TRUE(r0.passed);
    EXPECT_NEAR(r0.rhs, u0.l1_norm() + 0.5 * f.l1_norm(), 1e-12);
    const Solved b = solve(kernel, u0, f + 0.3 * gaussian(grid, 1.0, 0.4, 0.1), 0.5, 5);
    const auto r1 = check_l1_contraction(a.traj, b.traj, a.data, b.data);
    EXPECT_GE(r1.slack, -1e-8);
    const auto swapped = check_l1_contraction(b.traj, a.traj, b.data, a.data);
    EXPECT_EQ(swapped.lhs, r1.lhs);
  }
}

TEST(L1Contraction, MismatchedGridsRejected) {
  const auto g1 = testing::line_grid(8), g2 = testing::line_grid(9);
  const auto k1 = assemble_kernel(g1, testing::reference_order(), 2.0);
  const auto k2 = assemble_kernel(g2, testing::reference_order(), 2.0);
  const Solved a = solve(k1, Field(g1), Field(g1), 0.5, 2);
  const Solved b = solve(k2, Field(g2), Field(g2), 0.5, 2);
  EXPECT_THROW(check_l1_contraction(a.traj, b.traj, a.data, b.data), std::invalid_argument);
}

TEST(Comparison, OrderedDataAndSwappedArguments) {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto grid = testing::line_grid(16);
    const auto kernel = assemble_kernel(grid, testing::reference_order(), p);
    const Field u0 = gaussian(grid, 1.0, 0.5, 0.2);
    const Field f = gaussian(grid, 0.5, 0.3, 0.1);
    const Solved lower = solve(kernel, u0, f, 0.5, 5);
    const Solved upper = solve(kernel, u0, f + gaussian(grid, 0.5, 0.7, 0.1), 0.5, 5);
    const auto same = check_comparison(lower.traj, lower.traj);
    EXPECT_TRUE(same.passed);
    EXPECT_EQ(same.slack, 0.0);
    EXPECT_TRUE(check_comparison(lower.traj, upper.traj).passed);
    EXPECT_FALSE(check_comparison(upper.traj, lower.traj).passed);
  }
}

TEST(EnergyEstimate, ZeroDataAndSaturation) {
  const auto grid = testing::line_grid(16);
  const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.0);
  const Solved zero = solve(kernel, Field(grid), Field(grid), 0.5, 4);
  const auto r = check_energy_estimate(kernel, zero.traj, zero.data, 1.0);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_TRUE(r.passed);

  const Solved a = solve(kernel, gaussian(grid, 0.6, 0.5, 0.15), gaussian(grid, 0.4, 0.5, 0.2), 0.5, 8);
  double sup = 0.0;
  for (const auto& s : a.traj.states) sup = std::max(sup, s.max_abs());
  const double k = 2.0 * sup;
  const auto r1 = check_energy_estimate(kernel, a.traj, a.data, k);
  const auto r2 = check_energy_estimate(kernel, a.traj, a.data, 2.0 * k);
  EXPECT_TRUE(r1.passed);
  EXPECT_EQ(r1.lhs, r2.lhs);
  const double data_l1 = a.data.source_l1() + a.data.initial.l1_norm();
  EXPECT_NEAR(r2.slack - r1.slack, k * data_l1, 1e-12 * k * data_l1);
  EXPECT_THROW(check_energy_estimate(kernel, a.traj, a.data, 0.0), std::invalid_argument);
}

TEST(RenormalizationTail, ZeroAboveSupAndBruteForceAtZero) {
  std::mt19937_64 rng(43);
  const auto grid = testing::line_grid(10);
  const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.5);
  const Solved pos = solve(kernel, testing::random_field(grid, rng, 0.0, 3.0),
                          testing::random_field(grid, rng, 0.0, 1.0), 0.3, 3);
  double sup = 0.0;
  for (const auto& s : pos.traj.states) sup = std::max(sup, s.max_abs());
  EXPECT_GT(renormalization_tail(kernel, pos.traj, 0.0), 0.0);
  EXPECT_EQ(renormalization_tail(kernel, pos.traj, sup + 0.01), 0.0);

  // Sign changes keep mixed pairs in D_h for every h.
  const Solved a = solve(kernel, testing::random_field(grid, rng, -2.0, 2.0), testing::random_field(grid, rng), 0.3, 3);
  const double h = 0.0;
  double brute = 0.0;
  const double w = grid->cell_volume();
  for (int n = 1; n <= a.traj.steps(); ++n) {
    const Field& u = a.traj.states[n];
    for (std::size_t i = 0; i < grid->node_count(); ++i)
      for (std::size_t j = 0; j < grid->node_count(); ++j) {
        if (i == j || (!grid->is_interior(i) && !grid->is_interior(j))) continue;
        const bool member = u[i] * u[j] < 0.0 ||
                            (std::min(std::abs(u[i]), std::abs(u[j])) <= h &&
                             std::max(std::abs(u[i]), std::abs(u[j])) >= h + 1.0);
        if (!member) continue;
        const double r = std::abs(grid->node(i)[0] - grid->node(j)[0]);
        const double sigma = w * w / std::pow(r, 1.0 + 2.5 * (0.3 + 0.2 * std::min(1.0, r)));
        brute += a.traj.tau * sigma * std::pow(std::abs(u[i] - u[j]), 1.5);
      }
    for (std::size_t i : grid->interior_nodes())
      if (std::abs(u[i]) >= h + 1.0)
        brute += a.traj.tau * 2.0 * w * kernel.tail(i) * std::pow(std::abs(u[i]), 1.5);
  }
  const double value = renormalization_tail(kernel, a.traj, h);
  EXPECT_GT(value, 0.0);
  EXPECT_NEAR(value, brute, 1e-11 * brute);
}

TEST(RenormalizationTail, NonincreasingInHForPositiveSingularData) {
  const auto grid = testing::line_grid(16);
  const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.0);
  const Field singular = Field::from_function(
      grid, [](const Point& x) { return 3.0 / std::sqrt(std::abs(x[0] - 0.5)); });
  const Solved a = solve(kernel, singular, singular, 0.2, 4);
  EXPECT_GT(a.traj.states[1].max_abs(), 8.0);
  double prev = renormalization_tail(kernel, a.traj, 1.0);
  EXPECT_GT(prev, 0.0);
  for (double h : {2.0, 4.0, 8.0}) {
    const double cur = renormalization_tail(kernel, a.traj, h);
    EXPECT_LE(cur, prev);
    prev = cur;
  }
}

TEST(RenormalizedResidual, ZeroTrajectory) {
  const auto grid = testing::line_grid(16);
  const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.0);
  const Solved zero = solve(kernel, Field(grid), Field(grid), 1.0, 4);
  const auto t = renormalized_residual(kernel, zero.traj, zero.data,
                                       Renormalizer::from_plateau(PlateauFn(1.0)), bump(1.0, 1.0));
  EXPECT_EQ(t.residual, 0.0);
}

TEST(RenormalizedResidual, ConstantShiftOfHCancels) {
  const auto grid = testing::line_grid(16);
  const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.0);
  const Solved a = solve(kernel, gaussian(grid, 1.0, 0.5, 0.15), gaussian(grid, 0.5, 0.5, 0.2), 1.0, 8);
  const auto phi = bump(0.7, 1.0);
  const auto base = renormalized_residual(kernel, a.traj, a.data, Renormalizer::from_plateau(PlateauFn(2.0)), phi);
  const auto shifted =
      renormalized_residual(kernel, a.traj, a.data, Renormalizer::from_plateau(PlateauFn(2.0), 0.75), phi);
  EXPECT_NEAR(shifted.time_term + shifted.initial_term, base.time_term + base.initial_term, 1e-10);
  EXPECT_EQ(shifted.pair_term, base.pair_term);
  EXPECT_EQ(shifted.source_term, base.source_term);
  EXPECT_NEAR(shifted.residual, base.residual, 1e-10);
}

TEST(RenormalizedResidual, RejectsBadTestFunction) {
  const auto grid = testing::line_grid(16);
  const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.0);
  const Solved zero = solve(kernel, Field(grid), Field(grid), 1.0, 2);
  const auto h = Renormalizer::from_plateau(PlateauFn(1.0));
  EXPECT_THROW(renormalized_residual(kernel, zero.traj, zero.data, h, bump(1.0, 1.0, 0.55)),
               std::invalid_argument);
  EXPECT_THROW(renormalized_residual(kernel, zero.traj, zero.data, h, bump(1.0, 2.0)),
               std::invalid_argument);
}

TEST(Entropy, ZeroDataAndZeroTestFunction) {
  const auto grid = testing::line_grid(16);
  const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.0);
  const Solved zero = solve(kernel, Field(grid), Field(grid), 1.0, 4);
  const auto e = entropy_residual(kernel, zero.traj, zero.data, bump(0.0, 1.0), 1.0);
  EXPECT_EQ(e.report.lhs, 0.0);
  EXPECT_EQ(e.report.rhs, 0.0);
  EXPECT_TRUE(e.report.passed);
}

TEST(Entropy, NonnegativeDataZeroTestFunction) {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto grid = testing::line_grid(16);
    const auto kernel = assemble_kernel(grid, testing::reference_order(), p);
    const Solved a = solve(kernel, gaussian(grid, 1.0, 0.5, 0.15), gaussian(grid, 0.8, 0.4, 0.1), 1.0, 8);
    for (double k : {0.5, 2.0})
      EXPECT_TRUE(entropy_residual(kernel, a.traj, a.data, bump(0.0, 1.0), k).report.passed);
  }
}

TEST(Entropy, SmallBumpAtTwoResolutions) {
  const auto grid = testing::line_grid(16);
  const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.0);
  const Field u0 = gaussian(grid, 1.0, 0.5, 0.15), f = gaussian(grid, 0.5, 0.5, 0.2);
  const Solved coarse = solve(kernel, u0, f, 1.0, 8);
  const Solved fine = solve(kernel, u0, f, 1.0, 16);
  const auto phi = bump(0.3, 1.0);
  const auto ec = entropy_residual(kernel, coarse.traj, coarse.data, phi, 1.0);
  const auto ef = entropy_residual(kernel, fine.traj, fine.data, phi, 1.0);
  EXPECT_TRUE(ec.report.passed);
  EXPECT_TRUE(ef.report.passed);
  EXPECT_LT(ef.report.slack, ec.report.slack);
}

TEST(Entropy, LargeKMatchesRenormalizedPairTerm) {
  const auto grid = testing::line_grid(16);
  const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.0);
  const Solved a = solve(kernel, gaussian(grid, 1.0, 0.5, 0.15), gaussian(grid, 0.5, 0.5, 0.2), 1.0, 8);
  const auto phi = bump(0.4, 1.0);
  double sup = 0.0;
  for (const auto& s : a.traj.states) sup = std::max(sup, s.max_abs());
  const double k = sup + phi.amplitude + 1.0;
  const auto e = entropy_residual(kernel, a.traj, a.data, phi, k);
  const auto r = renormalized_residual(kernel, a.traj, a.data,
                                       Renormalizer::from_plateau(PlateauFn(sup + 1.0)), phi);
  // T_k(u - phi) = u - phi on the range, H' = 1: the pair terms differ by sum tau <A u^n, u^n>.
  double self = 0.0;
  for (int n = 1; n <= a.traj.steps(); ++n) self += a.traj.tau * 0.5 * gagliardo_p(kernel, a.traj.states[n]);
  EXPECT_NEAR(e.pair_term, self - r.pair_term, 1e-10);
}

TEST(Poincare, BoundAndHomogeneity) {
  std::mt19937_64 rng(45);
  for (int dim : {1, 2}) {
    const auto grid = dim == 1 ? testing::line_grid(32) : testing::square_grid(8);
    const auto kernel = assemble_kernel(grid, testing::reference_order(), 2.0);
    const double c = poincare_constant(kernel);
    const Field ones = Field::from_function(grid, [](const Point&) { return 1.0; });
    EXPECT_LE(poincare_ratio(kernel, ones), c);
    for (int t = 0; t < 50; ++t) {
      const Field u = testing::random_field(grid, rng);
      const double ratio = poincare_ratio(kernel, u);
      EXPECT_LE(ratio, c);
      EXPECT_NEAR(poincare_ratio(kernel, -2.5 * u), ratio, 1e-12 * ratio);
    }
    EXPECT_THROW(poincare_ratio(kernel, Field(grid)), std::invalid_argument);
  }
}

TEST(CheckReportTest, VerdictFollowsSlack) {
  const auto ok = CheckReport::make("a", 1.0, 1.0 - 5e-9, 1e-8);
  EXPECT_TRUE(ok.passed);
  EXPECT_NEAR(ok.slack, -5e-9, 1e-15);
  EXPECT_FALSE(CheckReport::make("b", 1.0, 1.0 - 2e-8, 1e-8).passed);
  EXPECT_NE(ok.text().find("PASS"), std::string::npos);
}

}  // namespace
}  // namespace fracp
