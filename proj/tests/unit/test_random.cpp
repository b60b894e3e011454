#include <gtest/gtest.h>

#include <set>

#include "qrenyi/random.hpp"

using namespace qrenyi;

TEST(Rng, SameSeedSameStream) {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next_u64(), b.next_u64());
    EXPECT_EQ(a.normal(), b.normal());
  }
}

TEST(Rng, TrialSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(trial_seed(7, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(trial_seed(7, 0), trial_seed(8, 0));
}

TEST(Rng, UniformStaysInRange) {
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double l = r.log_uniform(0.5, 2.0);
    ASSERT_GE(l, 0.5 * (1 - 1e-15));
    ASSERT_LE(l, 2.0 * (1 + 1e-15));
    const int k = r.uniform_int(2, 4);
    ASSERT_GE(k, 2);
    ASSERT_LE(k, 4);
  }
}

TEST(Rng, NormalMoments) {
  Rng r(99);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}
