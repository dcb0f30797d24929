#include <gtest/gtest.h>

#include "packlp/dual_ascent.hpp"
#include "packlp/instances.hpp"
#include "packlp/simplex.hpp"
#include "packlp/solvers.hpp"
#include "support.hpp"

using namespace packlp;

TEST(DualAscent, UnconstrainedInstance) {
  const PackingLp lp(2, 3, {1.0, 1.0}, {2.0, 3.0, 1.0}, {});
  const auto out = dual_ascent_solve(lp, 1e-3);
  EXPECT_EQ(out.primal.x, std::vector<double>(3, 1.0));
  EXPECT_DOUBLE_EQ(out.primal.objective, 6.0);
}

TEST(DualAscent, SingleUniformRow) {
  std::vector<Entry> e;
  std::vector<double> c;
  packlp::SplitMix64 rng(5);
  for (std::size_t j = 0; j < 40; ++j) {
    e.push_back({0, j, 0.5});
    c.push_back(rng.uniform(1.0, 10.0));
  }
  const PackingLp lp(1, 40, {7.0}, c, e);
  const auto da = dual_ascent_solve(lp, 1e-3);
  const double opt = simplex_solve(lp).primal.objective;
  const double ad = da.contract.alpha_d;
  EXPECT_TRUE(check_feasible(lp, da.primal.x).feasible);
  EXPECT_GE(da.primal.objective, opt / (ad * ad) - 1e-6);
  EXPECT_LE(da.primal.objective, opt + 1e-9);
}

TEST(DualAscent, RandomInstanceWithinMeasuredFactor) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto lp = generate_random(GeneratorSpec::random(10, 100, 0.8, s));
    const auto da = dual_ascent_solve(lp, 1e-3);
    const double opt = simplex_solve(lp).primal.objective;
    const auto rep = check_slackness(lp, da.primal.x, da.dual, 1.0, da.contract.alpha_d, 1e-9);
    EXPECT_TRUE(rep.primal_feasible) << "seed " << s;
    EXPECT_TRUE(rep.dual_feasible) << "seed " << s;
    EXPECT_TRUE(rep.primal_ok) << "seed " << s;
    EXPECT_LE(rep.measured_alpha_p, 1.0 + 1e-9);
    EXPECT_GE(da.primal.objective, opt / (da.contract.alpha_d * da.contract.alpha_d) - 1e-6) << "seed " << s;
    // weak duality
    EXPECT_GE(dual_objective(lp, da.dual), opt - 1e-6 * opt);
  }
}

TEST(DualAscent, ContractIsMeasured) {
  const DualAscentSolver s;
  EXPECT_EQ(s.name(), "dual-ascent");
  EXPECT_FALSE(s.declared_contract().certified);
  EXPECT_THROW(DualAscentSolver(DualAscentOptions{0.0}), SpecError);
}

TEST(SolverFactory, ByName) {
  EXPECT_EQ(make_solver("simplex")->name(), "simplex");
  EXPECT_EQ(make_solver("dual-ascent")->name(), "dual-ascent");
  EXPECT_THROW(make_solver("gurobi"), SpecError);
}
