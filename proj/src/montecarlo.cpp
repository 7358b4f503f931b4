#include "wseq/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wseq/rng.hpp"

namespace wseq {

namespace {

struct BlockTally {
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
};

void check_config(const TrialConfig& cfg) {
  if (!(2 <= cfg.t && cfg.t < cfg.k && cfg.k < cfg.n)) {
    throw std::invalid_argument("montecarlo: need 2 <= t < k < n");
  }
  if (cfg.trials < 1) throw std::invalid_argument("montecarlo: trials must be >= 1");
  (void)Modulus(cfg.n);
}

std::uint64_t block_count(std::uint64_t trials) { return (trials + kTrialsPerBlock - 1) / kTrialsPerBlock; }

std::uint64_t block_size(std::uint64_t trials, std::uint64_t b) {
  return std::min(kTrialsPerBlock, trials - b * kTrialsPerBlock);
}

bool has_collision(std::span<const Residue> sums, int t) {
  const int last = static_cast<int>(sums.size()) - 1;
  for (int j = 2; j <= last; ++j) {
    for (int i = std::max(0, j - t); i + 1 < j; ++i) {
      if (sums[i] == sums[j]) return true;
    }
  }
  return false;
}

BlockTally failure_block(const TrialConfig& cfg, std::uint64_t b) {
  const Modulus m(cfg.n);
  std::mt19937_64 gen(derive_seed(cfg.seed, b));
  std::vector<Residue> pool(static_cast<std::size_t>(cfg.n - 1));
  std::iota(pool.begin(), pool.end(), Residue{1});
  std::vector<Residue> sums(cfg.k + 1, 0);
  BlockTally tally;
  for (std::uint64_t r = 0; r < block_size(cfg.trials, b); ++r) {
    partial_shuffle(gen, std::span<Residue>(pool), static_cast<std::size_t>(cfg.k));
    for (int i = 0; i < cfg.k; ++i) sums[i + 1] = m.add(sums[i], pool[i]);
    if (has_collision(sums, cfg.t)) ++tally.sum;
  }
  tally.sum_sq = tally.sum;
  return tally;
}

BlockTally collision_block(const SubsetSpec& subset, int t, std::uint64_t trials, std::uint64_t seed,
                           std::uint64_t b) {
  const Modulus& m = subset.modulus();
  std::mt19937_64 gen(derive_seed(seed, b));
  std::vector<Residue> items = subset.elements();
  std::vector<Residue> sums(items.size() + 1, 0);
  BlockTally tally;
  for (std::uint64_t r = 0; r < block_size(trials, b); ++r) {
    partial_shuffle(gen, std::span<Residue>(items), items.size());
    for (std::size_t i = 0; i < items.size(); ++i) sums[i + 1] = m.add(sums[i], items[i]);
    const std::uint64_t x = count_window_collisions(sums, t);
    tally.sum += x;
    tally.sum_sq += x * x;
  }
  return tally;
}

template <class Block>
BlockTally run_blocks(std::uint64_t trials, int threads, Block&& block) {
  const std::int64_t blocks = static_cast<std::int64_t>(block_count(trials));
  std::vector<BlockTally> tallies(static_cast<std::size_t>(blocks));
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (std::int64_t b = 0; b < blocks; ++b) tallies[b] = block(static_cast<std::uint64_t>(b));
  BlockTally total;
  for (const auto& t : tallies) {
    total.sum += t.sum;
    total.sum_sq += t.sum_sq;
  }
  return total;
}

template <class Block>
BlockTally run_blocks_serial(std::uint64_t trials, Block&& block) {
  BlockTally total;
  for (std::uint64_t b = 0; b < block_count(trials); ++b) {
    const BlockTally t = block(b);
    total.sum += t.sum;
    total.sum_sq += t.sum_sq;
  }
  return total;
}

void check_bounds(EstimateReport& rep) {
  const double slack = 4 * rep.standard_error;
  rep.bound_satisfied = rep.estimate <= rep.bound + slack;
  rep.sharp_bound_satisfied = rep.estimate <= rep.sharp_bound + slack;
  rep.corrected_bound_satisfied = rep.estimate <= rep.corrected_bound + slack;
}

EstimateReport failure_report(const TrialConfig& cfg, const BlockTally& tally) {
  EstimateReport rep;
  rep.quantity = "failure_probability";
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  rep.total = tally.sum;
  const double n = static_cast<double>(cfg.trials);
  rep.estimate = static_cast<double>(tally.sum) / n;
  rep.standard_error = std::sqrt(rep.estimate * (1.0 - rep.estimate) / n);
  rep.bound = failure_bound(cfg.n, cfg.k, cfg.t).get_d();
  rep.sharp_bound = failure_sharp_bound(cfg.n, cfg.k, cfg.t).get_d();
  rep.corrected_bound = failure_corrected_bound(cfg.n, cfg.k, cfg.t).get_d();
  check_bounds(rep);
  return rep;
}

void check_collision_args(const SubsetSpec& subset, int t, std::uint64_t trials) {
  if (t < 2 || t >= static_cast<int>(subset.size())) {
    throw std::invalid_argument("collision mean: need 2 <= t < |A|");
  }
  if (trials < 1) throw std::invalid_argument("collision mean: trials must be >= 1");
}

EstimateReport collision_report(const SubsetSpec& subset, int t, std::uint64_t trials, std::uint64_t seed,
                                const BlockTally& tally) {
  EstimateReport rep;
  rep.quantity = "collision_mean";
  rep.trials = trials;
  rep.seed = seed;
  rep.total = tally.sum;
  const double n = static_cast<double>(trials);
  rep.estimate = static_cast<double>(tally.sum) / n;
  if (trials > 1) {
    const double var = (static_cast<double>(tally.sum_sq) - n * rep.estimate * rep.estimate) / (n - 1);
    rep.standard_error = std::sqrt(std::max(0.0, var) / n);
  }
  rep.bound = t - 1;
  rep.sharp_bound = collision_sharp_bound(static_cast<int>(subset.size()), t).get_d();
  rep.corrected_bound = t - 1;
  check_bounds(rep);
  return rep;
}

}  // namespace

mpq_class failure_bound(std::int64_t n, int k, int t) {
  mpq_class q(static_cast<long>(t - 1) * (k - 2), n - 2);
  q.canonicalize();
  return q;
}

mpq_class failure_sharp_bound(std::int64_t n, int k, int t) {
  mpq_class s = 0;
  for (int l = 2; l <= t; ++l) {
    mpq_class term(k - l, n - l);
    term.canonicalize();
    s += term;
  }
  return s;
}

mpq_class failure_corrected_bound(std::int64_t n, int k, int t) {
  mpq_class s = 0;
  for (int l = 2; l <= t; ++l) {
    mpq_class term(k - l + 1, n - l);
    term.canonicalize();
    s += term;
  }
  return s;
}

mpq_class collision_sharp_bound(int k, int t) {
  mpq_class s = 0;
  for (int l = 2; l <= t; ++l) {
    mpq_class term(k - l, k - l + 1);
    term.canonicalize();
    s += term;
  }
  return s;
}

EstimateReport estimate_failure_probability(const TrialConfig& cfg, int threads) {
  check_config(cfg);
  return failure_report(cfg, run_blocks(cfg.trials, threads, [&](std::uint64_t b) { return failure_block(cfg, b); }));
}

EstimateReport estimate_failure_probability_serial(const TrialConfig& cfg) {
  check_config(cfg);
  return failure_report(cfg, run_blocks_serial(cfg.trials, [&](std::uint64_t b) { return failure_block(cfg, b); }));
}

EstimateReport estimate_collision_mean(const SubsetSpec& subset, int t, std::uint64_t trials, std::uint64_t seed,
                                       int threads) {
  check_collision_args(subset, t, trials);
  auto block = [&](std::uint64_t b) { return collision_block(subset, t, trials, seed, b); };
  return collision_report(subset, t, trials, seed, run_blocks(trials, threads, block));
}

EstimateReport estimate_collision_mean_serial(const SubsetSpec& subset, int t, std::uint64_t trials,
                                              std::uint64_t seed) {
  check_collision_args(subset, t, trials);
  auto block = [&](std::uint64_t b) { return collision_block(subset, t, trials, seed, b); };
  return collision_report(subset, t, trials, seed, run_blocks_serial(trials, block));
}

ExactValue exact_failure_probability(std::int64_t n, int k, int t) {
  check_config({n, k, t, 1, 0});
  const Modulus m(n);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<Residue> sums{0};
  mpz_class failures = 0, total = 0;
  // Depth-first over ordered samples; `bad` marks a collision already present in the prefix.
  auto rec = [&](auto&& self, bool bad) -> void {
    if (static_cast<int>(sums.size()) == k + 1) {
      ++total;
      if (bad) ++failures;
      return;
    }
    for (Residue x = 1; x < n; ++x) {
      if (used[x]) continue;
      const Residue s = m.add(sums.back(), x);
      bool hit = bad;
      const int j = static_cast<int>(sums.size());
      for (int i = std::max(0, j - t); !hit && i + 1 < j; ++i) hit = sums[i] == s;
      used[x] = 1;
      sums.push_back(s);
      self(self, hit);
      sums.pop_back();
      used[x] = 0;
    }
  };
  rec(rec, false);
  ExactValue out;
  out.value = mpq_class(failures, total);
  out.value.canonicalize();
  out.bound = failure_bound(n, k, t);
  out.sharp_bound = failure_sharp_bound(n, k, t);
  out.corrected_bound = failure_corrected_bound(n, k, t);
  return out;
}

ExactValue exact_collision_mean(const SubsetSpec& subset, int t) {
  check_collision_args(subset, t, 1);
  const Modulus& m = subset.modulus();
  std::vector<Residue> items = subset.elements();
  std::vector<Residue> sums(items.size() + 1, 0);
  mpz_class sum = 0, count = 0;
  do {
    for (std::size_t i = 0; i < items.size(); ++i) sums[i + 1] = m.add(sums[i], items[i]);
    sum += static_cast<unsigned long>(count_window_collisions(sums, t));
    ++count;
  } while (std::next_permutation(items.begin(), items.end()));
  ExactValue out;
  out.value = mpq_class(sum, count);
  out.value.canonicalize();
  out.bound = t - 1;
  out.sharp_bound = collision_sharp_bound(static_cast<int>(subset.size()), t);
  out.corrected_bound = t - 1;
  out.strict = true;
  return out;
}

}  // namespace wseq
