#include <gtest/gtest.h>

#include "packlp/simplex.hpp"
#include "packlp/solver.hpp"
#include "support.hpp"

using namespace packlp;

TEST(Slackness, VacuousWhenNothingIsActive) {
  const PackingLp lp(2, 3, {1.0, 1.0}, {0.0, 0.0, 0.0}, {{0, 0, 0.5}, {1, 2, 1.0}});
  const auto r = check_slackness(lp, std::vector<double>(3, 0.0), {{0.0, 0.0}, {0.0, 0.0, 0.0}}, 1.0, 1.0, 1e-9);
  EXPECT_TRUE(r.primal_ok);
  EXPECT_TRUE(r.dual_ok);
  EXPECT_EQ(r.measured_alpha_p, 1.0);
  EXPECT_EQ(r.measured_alpha_d, 1.0);
  EXPECT_TRUE(r.violating_indices.empty());
}

TEST(Slackness, ExactSolverPasses) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto lp = support::random_lp(5, 11, 0.7, s);
    const auto out = simplex_solve(lp);
    const auto r = check_slackness(lp, out.primal.x, out.dual, 1.0, 1.0, 1e-6);
    EXPECT_TRUE(r.primal_ok && r.dual_ok) << "seed " << s;
    EXPECT_NEAR(r.measured_alpha_p, 1.0, 1e-6);
    EXPECT_NEAR(r.measured_alpha_d, 1.0, 1e-6);
  }
}

TEST(Slackness, HandBuiltPrimalViolation) {
  // x_1 = 1 while a_1.y = 0.5 c_1: priced below cost.
  const PackingLp lp(1, 2, {5.0}, {1.0, 4.0}, {{0, 0, 1.0}, {0, 1, 1.0}});
  const DualSolution y{{2.0}, {0.0, 0.0}};
  const auto r = check_slackness(lp, std::vector<double>{0.0, 1.0}, y, 1.0, 1.0, 1e-9);
  EXPECT_FALSE(r.primal_ok);
  EXPECT_FALSE(r.dual_feasible);
  ASSERT_FALSE(r.violating_indices.empty());
  EXPECT_EQ(r.violating_indices.front().kind, SlacknessViolation::Kind::primal_column);
  EXPECT_EQ(r.violating_indices.front().index, 1u);
}

TEST(Slackness, MeasuresApproximationFactors) {
  // y over-prices column 0 by 1.5 and row 0 is only 2/3 used.
  const PackingLp lp(1, 1, {3.0}, {2.0}, {{0, 0, 1.0}});
  const DualSolution y{{3.0}, {0.0}};
  const auto r = check_slackness(lp, std::vector<double>{1.0}, y, 1.5, 3.0, 0.0);
  EXPECT_TRUE(r.primal_ok);
  EXPECT_TRUE(r.dual_ok);
  EXPECT_DOUBLE_EQ(r.measured_alpha_p, 1.5);
  EXPECT_DOUBLE_EQ(r.measured_alpha_d, 3.0);
  const auto strict = check_slackness(lp, std::vector<double>{1.0}, y, 1.0, 1.0, 0.0);
  EXPECT_FALSE(strict.primal_ok);
  EXPECT_FALSE(strict.dual_ok);
}

TEST(Slackness, DimensionChecks) {
  const PackingLp lp(1, 2, {1.0}, {1.0, 1.0}, {});
  EXPECT_THROW(check_slackness(lp, std::vector<double>{0.0}, {{0.0}, {0.0, 0.0}}, 1, 1, 0), DimensionError);
  EXPECT_THROW(check_slackness(lp, std::vector<double>{0.0, 0.0}, {{}, {0.0, 0.0}}, 1, 1, 0), DimensionError);
}

TEST(PerturbCosts, SmallSeededAndDeterministic) {
  const auto lp = support::random_lp(3, 20, 0.5, 8);
  const auto a = perturb_costs(lp, 1);
  const auto b = perturb_costs(lp, 1);
  EXPECT_EQ(a, b);
  for (std::size_t j = 0; j < 20; ++j) {
    EXPECT_GE(a.c()[j], lp.c()[j]);
    EXPECT_LE(a.c()[j], lp.c()[j] * (1.0 + 1e-9));
  }
  EXPECT_NE(perturb_costs(lp, 2).c()[0], a.c()[0]);
}
