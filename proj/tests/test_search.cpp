#include <gtest/gtest.h>

#include <random>

#include "wseq/search.hpp"

using namespace wseq;

namespace {

SubsetSpec subset(std::int64_t n, std::vector<Residue> xs) { return SubsetSpec(Modulus(n), std::move(xs)); }

std::vector<Residue> range(Residue lo, Residue hi) {
  std::vector<Residue> v;
  for (Residue x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

// Every prefix window of length 2..t (or 3..t for cmpp) has nonzero sum.
bool prefix_ok(const Ordering& o, int t, Variant v) {
  const auto s = partial_sums(o).sums;
  const int h = static_cast<int>(o.size());
  const int min_gap = v == Variant::main ? 2 : 3;
  for (int j = 1; j <= h; ++j) {
    for (int i = std::max(0, j - t); i + min_gap <= j; ++i) {
      if (s[i] == s[j]) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Variant, RoundTrip) {
  EXPECT_EQ(parse_variant("main"), Variant::main);
  EXPECT_EQ(parse_variant("cmpp"), Variant::cmpp);
  EXPECT_EQ(to_string(Variant::cmpp), "cmpp");
  EXPECT_THROW(parse_variant("other"), std::invalid_argument);
}

TEST(GreedyPrefix, HandExamples) {
  EXPECT_EQ(greedy_prefix(subset(11, {1, 2, 3, 4, 5}), 2, 3).sequence(), (std::vector<Residue>{1, 2, 3}));
  EXPECT_EQ(greedy_prefix(subset(13, {9, 4, 7}), 3, 1).sequence(), (std::vector<Residue>{4}));
  GreedyOptions inv;
  inv.involution_first = true;
  EXPECT_EQ(greedy_prefix(subset(8, {4, 1, 2, 3}), 2, 2, inv).sequence(), (std::vector<Residue>{4, 1}));
}

TEST(GreedyPrefix, PreconditionsEnforced) {
  EXPECT_THROW(greedy_prefix(subset(11, {1, 2, 3, 4, 5}), 3, 4), std::invalid_argument);
  GreedyOptions cmpp{Variant::cmpp, false};
  EXPECT_NO_THROW(greedy_prefix(subset(11, {1, 2, 3, 4, 5}), 3, 4, cmpp));
  EXPECT_THROW(greedy_prefix(subset(11, {1, 2, 3, 4, 5}), 3, 5, cmpp), std::invalid_argument);
  EXPECT_THROW(greedy_prefix(subset(11, {1, 10, 3}), 2, 1, cmpp), std::invalid_argument);
}

TEST(BacktrackingSearch, HandExamples) {
  auto r = backtracking_search(subset(7, {1, 2, 3}), 2);
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_TRUE(is_t_weak_sequencing(*r.ordering, 2));
  EXPECT_EQ(r.ordering->sequence(), (std::vector<Residue>{1, 2, 3}));

  r = backtracking_search(subset(5, {1, 4}), 1);
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_EQ(r.ordering->sequence(), (std::vector<Residue>{1, 4}));

  r = backtracking_search(subset(5, {1, 2, 3, 4}), 3);
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_TRUE(is_t_weak_sequencing(*r.ordering, 3));
}

TEST(BacktrackingSearch, BudgetExhaustionIsReported) {
  SearchBudget tiny;
  tiny.max_nodes = 1;
  const auto r = backtracking_search(subset(5, {1, 2, 3, 4}), 3, tiny);
  EXPECT_EQ(r.status, SearchStatus::budget_exhausted);
  EXPECT_FALSE(r.ordering.has_value());
}

TEST(BacktrackingSearch, AgreesWithPermutationScan) {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 300; ++rep) {
    const std::int64_t n = 4 + static_cast<std::int64_t>(gen() % 9);
    auto pool = range(1, n - 1);
    std::shuffle(pool.begin(), pool.end(), gen);
    const int k = 2 + static_cast<int>(gen() % std::min<std::int64_t>(5, n - 2));
    pool.resize(k);
    const int t = 1 + static_cast<int>(gen() % (k - 1));
    std::sort(pool.begin(), pool.end());
    bool exists = false;
    auto perm = pool;
    do {
      exists = exists || is_t_weak_sequencing(Ordering(Modulus(n), perm), t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto r = backtracking_search(SubsetSpec(Modulus(n), pool), t);
    ASSERT_EQ(r.status, exists ? SearchStatus::found : SearchStatus::none);
    if (exists) ASSERT_TRUE(is_t_weak_sequencing(*r.ordering, t));
  }
}

TEST(SequencingSearch, FindsFullSequencing) {
  const auto r = sequencing_search(subset(7, {1, 2, 3, 4}));
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_NE(classify_ordering(*r.ordering), OrderingClass::neither);
}

TEST(ConstructT3, HandExamples) {
  auto r = construct_t3(subset(11, range(1, 10)));
  EXPECT_TRUE(is_t_weak_sequencing(r.ordering, 3));
  EXPECT_EQ(r.ordering.size(), 10u);
  EXPECT_EQ(r.method, "greedy-prefix+tail");

  r = construct_t3(subset(12, {6, 1, 2, 3, 4, 5, 7}));
  EXPECT_TRUE(is_t_weak_sequencing(r.ordering, 3));

  r = construct_t3(subset(7, {1, 2, 3, 4}));
  EXPECT_TRUE(is_t_weak_sequencing(r.ordering, 3));
  EXPECT_EQ(r.method, "sequencing-search");

  r = construct_t3(subset(14, range(1, 13)));
  EXPECT_TRUE(is_t_weak_sequencing(r.ordering, 3));
  EXPECT_EQ(r.ordering.sequence().front(), 7);

  EXPECT_THROW(construct_t3(subset(7, {1, 2, 3})), std::invalid_argument);
}

TEST(LowCollision, HandExamples) {
  auto r = find_low_collision_ordering(subset(13, range(1, 12)), 4, 1, 64);
  EXPECT_TRUE(r.bound_met);
  EXPECT_LE(r.violations, 2u);
  EXPECT_EQ(r.violations, t_weak_violations(r.ordering, 4).size());

  r = find_low_collision_ordering(subset(7, {1, 2, 3}), 2, 5, 64);
  EXPECT_TRUE(r.bound_met);
  EXPECT_EQ(r.violations, 0u);
}

TEST(LowCollision, DeterministicUnderSeed) {
  const auto a = find_low_collision_ordering(subset(31, range(1, 20)), 5, 42, 8);
  const auto b = find_low_collision_ordering(subset(31, range(1, 20)), 5, 42, 8);
  EXPECT_EQ(a.ordering, b.ordering);
  EXPECT_EQ(a.violations, b.violations);
  EXPECT_EQ(a.restarts_used, b.restarts_used);
}

TEST(LowCollision, TwoWeakAlwaysReached) {
  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 100; ++rep) {
    const std::int64_t n = 5 + static_cast<std::int64_t>(gen() % 40);
    auto pool = range(1, n - 1);
    std::shuffle(pool.begin(), pool.end(), gen);
    pool.resize(3 + gen() % (n - 3));
    const auto r = find_low_collision_ordering(SubsetSpec(Modulus(n), pool), 2, rep, 256);
    ASSERT_TRUE(r.bound_met);
    ASSERT_TRUE(is_t_weak_sequencing(r.ordering, 2));
  }
}

TEST(AllNonzeroSubsets, CountsAndOrder) {
  const auto s = all_nonzero_subsets(6, 2);
  ASSERT_EQ(s.size(), 10u);
  EXPECT_EQ(s.front(), (std::vector<Residue>{1, 2}));
  EXPECT_EQ(s.back(), (std::vector<Residue>{4, 5}));
}

TEST(ExhaustiveCheck, HandExamples) {
  auto rep = exhaustive_check(Modulus(7), 2, 3, 6);
  EXPECT_TRUE(rep.all_sequenceable());
  ASSERT_EQ(rep.rows.size(), 4u);
  EXPECT_EQ(rep.rows[0].subsets, 20u);
  for (const auto& row : rep.rows) EXPECT_EQ(row.undecided, 0u);

  rep = exhaustive_check(Modulus(5), 2, 3, 4);
  EXPECT_TRUE(rep.all_sequenceable());

  rep = exhaustive_check(Modulus(3), 2, 3, 3);
  EXPECT_TRUE(rep.rows.empty());
}

TEST(ExhaustiveCheck, ParallelMatchesSerial) {
  const auto par = exhaustive_check(Modulus(11), 3, 4, 7, {}, 4);
  const auto ser = exhaustive_check_serial(Modulus(11), 3, 4, 7);
  ASSERT_EQ(par.rows.size(), ser.rows.size());
  for (std::size_t i = 0; i < par.rows.size(); ++i) {
    EXPECT_EQ(par.rows[i].subsets, ser.rows[i].subsets);
    EXPECT_EQ(par.rows[i].sequenceable, ser.rows[i].sequenceable);
    EXPECT_EQ(par.rows[i].undecided, ser.rows[i].undecided);
  }
  EXPECT_EQ(par.counterexamples, ser.counterexamples);
}

TEST(ExhaustiveCheck, UndecidedIsNotCounterexample) {
  SearchBudget tiny;
  tiny.max_nodes = 1;
  const auto rep = exhaustive_check(Modulus(11), 3, 8, 8, tiny);
  EXPECT_TRUE(rep.counterexamples.empty());
  EXPECT_FALSE(rep.undecided_sets.empty());
  EXPECT_FALSE(rep.all_sequenceable());
}

// Greedy property sweep at modest size; the acceptance binary runs the full n <= 17 sweep.
TEST(GreedyPrefix, NeverFailsWithinBounds) {
  for (std::int64_t n = 5; n <= 11; ++n) {
    for (int k = 2; k < n; ++k) {
      for (const auto& xs : all_nonzero_subsets(n, k)) {
        const SubsetSpec a(Modulus(n), xs);
        const bool admissible = cmpp_admissible(a);
        for (int t = 1; t <= std::min(6, k - 1); ++t) {
          for (int h = 1; h <= k - (t - 1); ++h) {
            ASSERT_TRUE(prefix_ok(greedy_prefix(a, t, h), t, Variant::main));
          }
          if (admissible && t >= 2) {
            for (int h = 1; h <= k - (t - 2) && h <= k; ++h) {
              ASSERT_TRUE(prefix_ok(greedy_prefix(a, t, h, {Variant::cmpp, false}), t, Variant::cmpp));
            }
          }
        }
      }
    }
  }
}
