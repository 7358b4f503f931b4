#ifndef WSEQ_SEARCH_HPP
#define WSEQ_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wseq/zn.hpp"

namespace wseq {

enum class Variant { main, cmpp };

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

/// Candidates are always scanned in ascending residue order.
struct GreedyOptions {
  Variant variant = Variant::main;
  bool involution_first = false;
};

struct SearchBudget {
  std::uint64_t max_nodes = 50'000'000;
  std::optional<std::uint64_t> time_limit_ms;
};

enum class SearchStatus { found, none, budget_exhausted };
std::string to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::none;
  std::optional<Ordering> ordering;
  std::uint64_t nodes_visited = 0;
};

/// Thrown when an algorithm whose success is guaranteed fails anyway.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Deterministic form of the inductive prefix construction. Returns (a_1..a_h) with
/// s_i != s_j for all 0 <= i < j <= min(h, i + t).
Ordering greedy_prefix(const SubsetSpec& subset, int t, int h, const GreedyOptions& opts = {});

/// Depth-first search for a t-weak sequencing, children in ascending residue order.
SearchResult backtracking_search(const SubsetSpec& subset, int t, const SearchBudget& budget = {});

/// Depth-first search for a sequencing or an R-sequencing.
SearchResult sequencing_search(const SubsetSpec& subset, const SearchBudget& budget = {});

struct ConstructResult {
  Ordering ordering;
  std::string method;  // "sequencing-search" or "greedy-prefix+tail"
};

/// A 3-weak sequencing of any subset of Z_n \ {0} with k >= 4.
ConstructResult construct_t3(const SubsetSpec& subset, const SearchBudget& fallback_budget = {});

struct LowCollisionResult {
  Ordering ordering;
  std::size_t violations = 0;
  bool bound_met = false;  // violations <= t - 2
  std::uint64_t restarts_used = 0;
};

/// Best of `restarts` seeded uniform orderings, stopping early at zero collisions.
LowCollisionResult find_low_collision_ordering(const SubsetSpec& subset, int t, std::uint64_t seed,
                                               std::uint64_t restarts);

struct ExhaustRow {
  int k = 0;
  std::uint64_t subsets = 0;
  std::uint64_t sequenceable = 0;
  std::uint64_t undecided = 0;
  std::uint64_t counterexamples = 0;
};

struct ExhaustReport {
  std::int64_t n = 0;
  int t = 0;
  int k_lo = 0;
  int k_hi = 0;
  std::vector<ExhaustRow> rows;
  std::vector<std::vector<Residue>> counterexamples;  // verbatim
  std::vector<std::vector<Residue>> undecided_sets;
  bool all_sequenceable() const;
};

/// Runs backtracking_search on every k-subset of Z_n \ {0}, k_lo <= k <= k_hi, k > t.
/// Parallel over subsets; the report does not depend on the thread count.
ExhaustReport exhaustive_check(const Modulus& n, int t, int k_lo, int k_hi, const SearchBudget& budget = {},
                               int threads = 0);

/// Plain loop over the same subsets, kept as the reference for exhaustive_check.
ExhaustReport exhaustive_check_serial(const Modulus& n, int t, int k_lo, int k_hi,
                                      const SearchBudget& budget = {});

/// All k-subsets of {1, ..., n-1} in lexicographic order.
std::vector<std::vector<Residue>> all_nonzero_subsets(std::int64_t n, int k);

}  // namespace wseq

#endif  // WSEQ_SEARCH_HPP
