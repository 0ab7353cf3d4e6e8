#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "plbea/rng.hpp"

using plbea::Rng;

TEST(Rng, MixerMatchesReferenceSplitMix64) {
  // First outputs of the reference generator seeded with 0.
  EXPECT_EQ(Rng::Mix(0x9e3779b97f4a7c15ULL), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(Rng::Mix(2 * 0x9e3779b97f4a7c15ULL), 0x6e789e6aa1b965f4ULL);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43), d(42, 1);
  bool differs_seed = false, differs_stream = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.Next();
    ASSERT_EQ(x, b.Next());
    differs_seed |= x != c.Next();
    differs_stream |= x != d.Next();
  }
  EXPECT_TRUE(differs_seed);
  EXPECT_TRUE(differs_stream);
  EXPECT_EQ(a.draws(), 100u);
}

TEST(Rng, SplitDoesNotAdvanceParent) {
  Rng a(9);
  Rng copy = a;
  Rng child = a.Split(3);
  EXPECT_EQ(a.Next(), copy.Next());
  EXPECT_NE(child.Next(), Rng(9).Split(4).Next());
}

TEST(Rng, Uniform01Range) {
  Rng r(1);
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double u = r.Uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  const double sigma = std::sqrt(1.0 / 12.0 / draws);
  EXPECT_NEAR(sum / draws, 0.5, 4 * sigma);
}

TEST(Rng, BelowIsUniform) {
  Rng r(77);
  constexpr int kBins = 7;
  std::array<int, kBins> counts{};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto v = r.Below(kBins);
    ASSERT_LT(v, static_cast<std::uint64_t>(kBins));
    ++counts[v];
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(draws) / kBins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 22.46);  // chi-square, 6 dof, p = 0.001
  EXPECT_EQ(r.Below(1), 0u);
}

TEST(Rng, WorksWithStdDistributions) {
  Rng r(5);
  std::uniform_int_distribution<int> dist(0, 9);
  for (int i = 0; i < 100; ++i) {
    const int v = dist(r);
    ASSERT_GE(v, 0);
    ASSERT_LE(v, 9);
  }
}
