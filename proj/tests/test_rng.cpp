#include <gtest/gtest.h>

#include <set>

#include "packlp/rng.hpp"

using namespace packlp;

TEST(SplitMix64, ReferenceVectorsSeedZero) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(SplitMix64, ReferenceVectorSeed1234567) {
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng.next(), 6457827717110365317ULL);
  EXPECT_EQ(rng.next(), 3203168211198807973ULL);
}

TEST(SplitMix64, Uniform01UsesTop53Bits) {
  SplitMix64 a(7), b(7);
  const double u = a.uniform01();
  EXPECT_EQ(u, static_cast<double>(b.next() >> 11) / 9007199254740992.0);
  EXPECT_GE(u, 0.0);
  EXPECT_LT(u, 1.0);
}

TEST(SplitMix64, BelowStaysInRangeAndCoversIt) {
  SplitMix64 rng(3);
  std::set<std::uint64_t> seen;
  for (int k = 0; k < 2000; ++k) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(SplitMix64, DeriveSeedIsDistinctPerIndex) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(42, i));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_EQ(derive_seed(42, 5), 42 ^ mix64(6 * kGoldenGamma));
}
