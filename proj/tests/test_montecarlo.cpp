#include <gtest/gtest.h>

#include "wseq/montecarlo.hpp"
#include "wseq/rng.hpp"

using namespace wseq;

TEST(Rng, UniformBelowStaysInRange) {
  std::mt19937_64 gen(1);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto x = uniform_below(gen, 7);
    ASSERT_LT(x, 7u);
    ++hist[x];
  }
  for (int c : hist) EXPECT_NEAR(c, 10000, 500);
}

TEST(Rng, PartialShuffleIsAPermutation) {
  std::mt19937_64 gen(2);
  std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
  partial_shuffle(gen, std::span<int>(v), 5);
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}

TEST(Bounds, ClosedForms) {
  EXPECT_EQ(failure_bound(101, 10, 3), mpq_class(16, 99));
  EXPECT_EQ(collision_sharp_bound(10, 3), mpq_class(8, 9) + mpq_class(7, 8));
  EXPECT_LT(collision_sharp_bound(10, 3), 2);
  EXPECT_EQ(failure_sharp_bound(50, 3, 2), mpq_class(1, 48));
  for (int k = 3; k <= 20; ++k) EXPECT_EQ(collision_sharp_bound(k, 2), mpq_class(k - 2, k - 1));
}

TEST(FailureProbability, PublishedConfiguration) {
  const auto rep = estimate_failure_probability({101, 10, 3, 100000, 7});
  EXPECT_TRUE(rep.bound_satisfied);
  EXPECT_NEAR(rep.bound, 16.0 / 99.0, 1e-12);
  EXPECT_EQ(rep.trials, 100000u);
  EXPECT_GT(rep.estimate, 0.0);
}

TEST(FailureProbability, ThreadCountIndependent) {
  const TrialConfig cfg{61, 12, 4, 50000, 123};
  const auto serial = estimate_failure_probability_serial(cfg);
  EXPECT_EQ(estimate_failure_probability(cfg, 1), serial);
  EXPECT_EQ(estimate_failure_probability(cfg, 3), serial);
  EXPECT_EQ(estimate_failure_probability(cfg, 8), serial);
}

TEST(FailureProbability, SingleTrialDeterministic) {
  const TrialConfig cfg{31, 8, 3, 1, 555};
  const auto a = estimate_failure_probability(cfg);
  const auto b = estimate_failure_probability(cfg);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.estimate == 0.0 || a.estimate == 1.0);
}

TEST(FailureProbability, RejectsBadConfig) {
  EXPECT_THROW(estimate_failure_probability({11, 3, 3, 10, 1}), std::invalid_argument);
  EXPECT_THROW(estimate_failure_probability({11, 11, 3, 10, 1}), std::invalid_argument);
  EXPECT_THROW(estimate_failure_probability({11, 5, 3, 0, 1}), std::invalid_argument);
}

TEST(FailureProbability, SmallKMatchesExactEnumeration) {
  for (std::int64_t n : {13, 29, 47}) {
    const auto exact = exact_failure_probability(n, 3, 2);
    EXPECT_TRUE(exact.within_corrected_bound());
    const auto est = estimate_failure_probability({n, 3, 2, 200000, 17});
    const double p = exact.value.get_d();
    EXPECT_NEAR(est.estimate, p, 5 * std::sqrt(p * (1 - p) / 200000) + 1e-9) << n;
  }
}

// For k = 3, t = 2 the failure event is a_1 + a_2 = 0 or a_2 + a_3 = 0: two windows, not
// one, so the published (t-1)(k-2)/(n-2) = 1/(n-2) is too small.
TEST(ExactFailure, PublishedBoundUndercountsWindows) {
  EXPECT_EQ(exact_failure_probability(5, 3, 2).value, mpq_class(2, 3));
  for (std::int64_t n = 5; n <= 15; ++n) {
    const auto e = exact_failure_probability(n, 3, 2);
    EXPECT_FALSE(e.within_bound()) << n;
    EXPECT_TRUE(e.within_corrected_bound()) << n;
    EXPECT_EQ(e.corrected_bound, mpq_class(2) / static_cast<long>(n - 2));
  }
}

TEST(ExactFailure, CorrectedBoundHoldsOnSmallGrid) {
  for (std::int64_t n = 5; n <= 11; ++n) {
    for (int k = 3; k <= std::min<std::int64_t>(5, n - 1); ++k) {
      for (int t = 2; t < k; ++t) {
        EXPECT_TRUE(exact_failure_probability(n, k, t).within_corrected_bound()) << n << " " << k << " " << t;
      }
    }
  }
}

TEST(CollisionMean, ThreadCountIndependent) {
  std::vector<Residue> xs;
  for (Residue x = 1; x <= 20; ++x) xs.push_back(x);
  const SubsetSpec a(Modulus(41), xs);
  const auto serial = estimate_collision_mean_serial(a, 5, 30000, 99);
  EXPECT_EQ(estimate_collision_mean(a, 5, 30000, 99, 1), serial);
  EXPECT_EQ(estimate_collision_mean(a, 5, 30000, 99, 4), serial);
  EXPECT_TRUE(serial.bound_satisfied);
  EXPECT_EQ(serial.bound, 4.0);
}

TEST(CollisionMean, ExactEnumerationWithinBounds) {
  const SubsetSpec a(Modulus(11), {1, 2, 3, 5, 8, 9});
  for (int t = 2; t <= 5; ++t) {
    const auto e = exact_collision_mean(a, t);
    EXPECT_TRUE(e.within_corrected_bound()) << t;
    EXPECT_LE(e.value, t - 1) << t;
  }
}

// With A = Z_7 \ {0} every element has its negative in A, so each of the k - 1 windows of
// length 2 vanishes with probability exactly 1/(k-1) and E(X) = 1 = t - 1.
TEST(CollisionMean, StrictInequalityFailsOnFullGroup) {
  const SubsetSpec a(Modulus(7), {1, 2, 3, 4, 5, 6});
  const auto e = exact_collision_mean(a, 2);
  EXPECT_EQ(e.value, 1);
  EXPECT_FALSE(e.within_bound());
  EXPECT_TRUE(e.within_corrected_bound());
}

TEST(CollisionMean, TwoWindowBelowOne) {
  const SubsetSpec a(Modulus(11), {1, 3, 4, 9, 10});
  const auto e = exact_collision_mean(a, 2);
  EXPECT_LT(e.value, 1);
  const auto est = estimate_collision_mean(a, 2, 20000, 3);
  EXPECT_LT(est.estimate, 1 + 4 * est.standard_error);
}
