#include <gtest/gtest.h>

#include "packlp/packing_lp.hpp"
#include "support.hpp"

using namespace packlp;

namespace {

PackingLp three_by_three() {
  // rows: [1 1 0], [0 0.5 1], [0.25 0 0]
  return PackingLp(3, 3, {1.5, 2.0, 7.0}, {1.0, 2.0, 3.0},
                   {{0, 0, 1.0}, {0, 1, 1.0}, {1, 1, 0.5}, {1, 2, 1.0}, {2, 0, 0.25}});
}

}  // namespace

TEST(PackingLp, ColumnsAreSortedAndComplete) {
  const auto lp = three_by_three();
  EXPECT_EQ(lp.nnz(), 5u);
  const auto col1 = lp.column(1);
  ASSERT_EQ(col1.size(), 2u);
  EXPECT_EQ(col1.rows[0], 0u);
  EXPECT_EQ(col1.rows[1], 1u);
  EXPECT_EQ(col1.values[1], 0.5);
  EXPECT_EQ(lp.column(0).size(), 2u);
  EXPECT_EQ(lp.column(2).size(), 1u);
}

TEST(PackingLp, RejectsInvalidData) {
  EXPECT_THROW(PackingLp(1, 1, {1.0}, {1.0}, {{0, 0, 1.5}}), ValidationError);
  EXPECT_THROW(PackingLp(1, 1, {1.0}, {1.0}, {{0, 0, -0.1}}), ValidationError);
  EXPECT_THROW(PackingLp(1, 1, {-1.0}, {1.0}, {}), ValidationError);
  EXPECT_THROW(PackingLp(1, 1, {1.0}, {-1.0}, {}), ValidationError);
  EXPECT_THROW(PackingLp(1, 2, {1.0}, {1.0, 1.0}, {{0, 1, 0.5}, {0, 1, 0.25}}), ValidationError);
  EXPECT_THROW(PackingLp(1, 2, {1.0}, {1.0, 1.0}, {{1, 0, 0.5}}), ValidationError);
  EXPECT_THROW(PackingLp(1, 2, {1.0}, {1.0, 1.0}, {{0, 2, 0.5}}), ValidationError);
  EXPECT_THROW(PackingLp(0, 2, {}, {1.0, 1.0}, {}), ValidationError);
  EXPECT_THROW(PackingLp(2, 2, {1.0}, {1.0, 1.0}, {}), ValidationError);
}

TEST(PackingLp, ZeroRightHandSideIsAllowed) {
  EXPECT_NO_THROW(PackingLp(1, 1, {0.0}, {1.0}, {{0, 0, 1.0}}));
}

TEST(Objective, ZeroCostVector) {
  const PackingLp lp(1, 3, {1.0}, {0.0, 0.0, 0.0}, {});
  EXPECT_EQ(objective(lp, std::vector<double>{0.3, 1.0, 0.7}), 0.0);
}

TEST(Objective, AllOnes) {
  const PackingLp lp(1, 7, {1.0}, std::vector<double>(7, 1.0), {});
  EXPECT_EQ(objective(lp, std::vector<double>(7, 1.0)), 7.0);
}

TEST(Objective, MatchesScalarLoop) {
  const auto lp = support::random_lp(3, 5, 0.6, 11);
  const std::vector<double> x{0.1, 0.9, 0.0, 1.0, 0.45};
  double expect = 0.0;
  for (std::size_t j = 0; j < 5; ++j) expect += lp.c()[j] * x[j];
  EXPECT_NEAR(objective(lp, x), expect, 1e-12);
}

TEST(Objective, LengthMismatch) {
  const auto lp = three_by_three();
  EXPECT_THROW(objective(lp, std::vector<double>(2, 0.0)), DimensionError);
}

TEST(Objective, LinearInScaling) {
  const auto lp = support::random_lp(4, 9, 0.7, 5);
  std::vector<double> x(9);
  packlp::SplitMix64 rng(1);
  for (auto& v : x) v = rng.uniform01();
  for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
    std::vector<double> y(x);
    for (auto& v : y) v *= lambda;
    EXPECT_NEAR(objective(lp, y), lambda * objective(lp, x), 1e-9 * (1.0 + objective(lp, x)));
  }
}

TEST(CheckFeasible, ZeroIsFeasible) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto lp = support::random_lp(4, 8, 0.5, s);
    EXPECT_TRUE(check_feasible(lp, std::vector<double>(8, 0.0), 0.0).feasible);
  }
}

TEST(CheckFeasible, ReportsViolatedRow) {
  const auto lp = three_by_three();
  const auto r = check_feasible(lp, std::vector<double>(3, 1.0));
  EXPECT_FALSE(r.feasible);
  ASSERT_EQ(r.violated_rows, std::vector<std::size_t>{0});
  EXPECT_DOUBLE_EQ(r.slack[0], -0.5);
  EXPECT_DOUBLE_EQ(r.slack[1], 0.5);
  EXPECT_DOUBLE_EQ(r.slack[2], 6.75);
  EXPECT_DOUBLE_EQ(r.worst_violation, 0.5);
}

TEST(CheckFeasible, MatchesDenseRecomputation) {
  packlp::SplitMix64 rng(99);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto lp = support::random_lp(4, 8, 0.6, s);
    std::vector<double> x(8);
    for (auto& v : x) v = rng.uniform(-0.05, 1.05);
    const auto a = support::dense(lp);
    const auto ax = support::dense_activity(a, x);
    bool expect = true;
    for (std::size_t i = 0; i < 4; ++i) expect = expect && ax[i] <= lp.b()[i] + 1e-7;
    for (double v : x) expect = expect && v >= -1e-7 && v <= 1.0 + 1e-7;
    const auto r = check_feasible(lp, x, 1e-7);
    EXPECT_EQ(r.feasible, expect) << "seed " << s;
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.slack[i], lp.b()[i] - ax[i], 1e-12);
  }
}

TEST(CheckFeasible, BinaryDomain) {
  const PackingLp lp(1, 2, {2.0}, {1.0, 1.0}, {});
  const std::vector<double> half{0.5, 1.0};
  EXPECT_TRUE(check_feasible(lp, half).feasible);
  const auto r = check_feasible(lp, half, 1e-7, Domain::binary);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.violated_vars, std::vector<std::size_t>{0});
}

TEST(CheckFeasible, BoxBoundsAndTolerance) {
  const PackingLp lp(1, 1, {1.0}, {1.0}, {});
  EXPECT_TRUE(check_feasible(lp, std::vector<double>{1.0 + 5e-8}).feasible);
  EXPECT_FALSE(check_feasible(lp, std::vector<double>{1.0 + 5e-7}).feasible);
  EXPECT_FALSE(check_feasible(lp, std::vector<double>{-1e-3}).feasible);
  EXPECT_THROW(check_feasible(lp, std::vector<double>{0.0}, -1.0), SpecError);
  EXPECT_THROW(check_feasible(lp, std::vector<double>{0.0, 0.0}), DimensionError);
}

TEST(MinB, Examples) {
  EXPECT_EQ(min_b(PackingLp(3, 1, {3.0, 1.0, 7.0}, {1.0}, {})), 1.0);
  EXPECT_EQ(min_b(PackingLp(1, 1, {5.0}, {1.0}, {})), 5.0);
  const double n = 1e6;
  EXPECT_EQ(min_b(PackingLp(2, 1, {0.1 * n, 0.1 * n}, {1.0}, {})), 1e5);
}

TEST(RelativeError, Examples) {
  EXPECT_EQ(relative_error(42.0, 42.0), 0.0);
  EXPECT_NEAR(relative_error(96.0, 100.0), 0.04, 1e-15);
  EXPECT_THROW(relative_error(1.0, 0.0), InvalidReferenceError);
  EXPECT_THROW(relative_error(1.0, -2.0), InvalidReferenceError);
}
