#ifndef WSEQ_MONTECARLO_HPP
#define WSEQ_MONTECARLO_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "wseq/zn.hpp"

namespace wseq {

/// Trials are split into blocks of this many; block b draws from
/// std::mt19937_64(derive_seed(seed, b)), so results do not depend on the thread count.
inline constexpr std::uint64_t kTrialsPerBlock = 4096;

struct TrialConfig {
  std::int64_t n = 0;
  int k = 0;
  int t = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Each bound is checked as estimate <= bound + 4 * standard_error.
///
/// `bound` and `sharp_bound` are the published closed form and the sum it comes from. That
/// sum counts k - l windows of length l where there are k - l + 1, and it is exceeded on
/// small cases (n = 5, k = 3, t = 2 fails with probability 2/3 against a bound of 1/3).
/// `corrected_bound` is the same union bound with the right count.
struct EstimateReport {
  std::string quantity;  // "failure_probability" or "collision_mean"
  double estimate = 0;
  double standard_error = 0;
  double bound = 0;            // (t-1)(k-2)/(n-2), or t-1
  double sharp_bound = 0;      // sum over l = 2..t of (k-l)/(n-l), or of (k-l)/(k-l+1)
  double corrected_bound = 0;  // sum over l = 2..t of (k-l+1)/(n-l), or t-1
  bool bound_satisfied = false;
  bool sharp_bound_satisfied = false;
  bool corrected_bound_satisfied = false;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t total = 0;  // failures, or the sum of X over trials
  friend bool operator==(const EstimateReport&, const EstimateReport&) = default;
};

/// P(a uniform ordered k-sample of Z_n \ {0} is not a t-weak sequencing).
EstimateReport estimate_failure_probability(const TrialConfig& cfg, int threads = 0);
EstimateReport estimate_failure_probability_serial(const TrialConfig& cfg);

/// Mean number X of pairs i < j, 2 <= j - i <= t, with s_i = s_j over uniform orderings of A.
EstimateReport estimate_collision_mean(const SubsetSpec& subset, int t, std::uint64_t trials, std::uint64_t seed,
                                       int threads = 0);
EstimateReport estimate_collision_mean_serial(const SubsetSpec& subset, int t, std::uint64_t trials,
                                              std::uint64_t seed);

struct ExactValue {
  mpq_class value;
  mpq_class bound;
  mpq_class sharp_bound;
  mpq_class corrected_bound;
  bool strict = false;  // the collision-mean claim is E(X) < t - 1
  bool within_bound() const { return strict ? value < bound : value <= bound; }
  bool within_sharp_bound() const { return value <= sharp_bound; }
  bool within_corrected_bound() const { return value <= corrected_bound; }
};

/// Enumerates all (n-1)!/(n-1-k)! ordered samples.
ExactValue exact_failure_probability(std::int64_t n, int k, int t);

/// Enumerates all k! orderings of A.
ExactValue exact_collision_mean(const SubsetSpec& subset, int t);

mpq_class failure_bound(std::int64_t n, int k, int t);
mpq_class failure_sharp_bound(std::int64_t n, int k, int t);
mpq_class failure_corrected_bound(std::int64_t n, int k, int t);
mpq_class collision_sharp_bound(int k, int t);

}  // namespace wseq

#endif  // WSEQ_MONTECARLO_HPP
