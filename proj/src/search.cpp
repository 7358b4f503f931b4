#include "wseq/search.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <sstream>

#include "wseq/rng.hpp"

namespace wseq {

std::string to_string(Variant v) { return v == Variant::main ? "main" : "cmpp"; }

Variant parse_variant(const std::string& s) {
  if (s == "main") return Variant::main;
  if (s == "cmpp") return Variant::cmpp;
  throw std::invalid_argument("unknown variant '" + s + "' (expected main or cmpp)");
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::budget_exhausted: return "budget_exhausted";
  }
  return "none";
}

bool ExhaustReport::all_sequenceable() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ExhaustRow& r) { return r.sequenceable == r.subsets; });
}

Ordering greedy_prefix(const SubsetSpec& subset, int t, int h, const GreedyOptions& opts) {
  const int k = static_cast<int>(subset.size());
  const Modulus& m = subset.modulus();
  if (t < 1) throw std::invalid_argument("greedy_prefix: t must be >= 1");
  if (h < 1 || h > k) throw std::invalid_argument("greedy_prefix: need 1 <= h <= k");
  if (opts.variant == Variant::main && h > k - (t - 1)) {
    throw std::invalid_argument("greedy_prefix: main variant needs h <= k - (t - 1)");
  }
  if (opts.variant == Variant::cmpp) {
    if (h > k - (t - 2)) throw std::invalid_argument("greedy_prefix: cmpp variant needs h <= k - (t - 2)");
    if (!cmpp_admissible(subset)) {
      throw std::invalid_argument("greedy_prefix: cmpp variant needs a set without {x, -x} pairs");
    }
  }

  const auto& elems = subset.elements();
  std::vector<char> used(elems.size(), 0);
  std::vector<Residue> seq;
  std::vector<Residue> sums{0};
  seq.reserve(h);
  sums.reserve(h + 1);

  auto take = [&](std::size_t idx) {
    used[idx] = 1;
    seq.push_back(elems[idx]);
    sums.push_back(m.add(sums.back(), elems[idx]));
  };

  if (opts.involution_first && m.is_even()) {
    auto it = std::lower_bound(elems.begin(), elems.end(), m.value() / 2);
    if (it != elems.end() && *it == m.value() / 2) take(static_cast<std::size_t>(it - elems.begin()));
  }

  std::vector<Residue> forbidden;
  while (static_cast<int>(seq.size()) < h) {
    const int len = static_cast<int>(seq.size());
    forbidden.clear();
    // x closes the window a_{i+1} + ... + a_len + x = 0 iff x = s_i - s_len.
    const int last_i = opts.variant == Variant::cmpp ? len - 2 : len - 1;
    for (int i = std::max(0, len + 1 - t); i <= last_i; ++i) {
      forbidden.push_back(m.reduce(sums[i] - sums[len]));
    }
    std::size_t pick = elems.size();
    for (std::size_t idx = 0; idx < elems.size(); ++idx) {
      if (used[idx]) continue;
      if (std::find(forbidden.begin(), forbidden.end(), elems[idx]) != forbidden.end()) continue;
      pick = idx;
      break;
    }
    if (pick == elems.size()) {
      throw InvariantError("greedy_prefix: no admissible element at step " + std::to_string(len + 1));
    }
    take(pick);
  }
  return Ordering(m, std::move(seq));
}

namespace {

class DepthFirst {
 public:
  DepthFirst(const SubsetSpec& subset, int window, bool allow_closing_zero, const SearchBudget& budget)
      : m_(subset.modulus()),
        elems_(subset.elements()),
        window_(window),
        allow_closing_zero_(allow_closing_zero),
        budget_(budget),
        used_(elems_.size(), 0),
        start_(std::chrono::steady_clock::now()) {
    sums_.reserve(elems_.size() + 1);
    sums_.push_back(0);
  }

  SearchResult run() {
    SearchResult res;
    const bool found = descend();
    res.nodes_visited = nodes_;
    if (found) {
      res.status = SearchStatus::found;
      res.ordering.emplace(m_, seq_);
    } else {
      res.status = exhausted_ ? SearchStatus::budget_exhausted : SearchStatus::none;
    }
    return res;
  }

 private:
  bool admissible(Residue s) const {
    const int pos = static_cast<int>(sums_.size());  // index the new sum would take
    const int k = static_cast<int>(elems_.size());
    for (int d = 2; d <= window_ && pos - d >= 0; ++d) {
      if (sums_[pos - d] != s) continue;
      if (allow_closing_zero_ && pos == k && pos - d == 0) continue;
      return false;
    }
    return true;
  }

  bool out_of_budget() {
    if (nodes_ > budget_.max_nodes) return true;
    if (budget_.time_limit_ms && (nodes_ & 0xFFF) == 0) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
      if (static_cast<std::uint64_t>(ms.count()) > *budget_.time_limit_ms) return true;
    }
    return false;
  }

  bool descend() {
    if (seq_.size() == elems_.size()) return true;
    for (std::size_t idx = 0; idx < elems_.size(); ++idx) {
      if (used_[idx]) continue;
      const Residue s = m_.add(sums_.back(), elems_[idx]);
      if (!admissible(s)) continue;
      ++nodes_;
      if (out_of_budget()) {
        exhausted_ = true;
        return false;
      }
      used_[idx] = 1;
      seq_.push_back(elems_[idx]);
      sums_.push_back(s);
      if (descend()) return true;
      if (exhausted_) return false;
      sums_.pop_back();
      seq_.pop_back();
      used_[idx] = 0;
    }
    return false;
  }

  Modulus m_;
  const std::vector<Residue>& elems_;
  int window_;
  bool allow_closing_zero_;
  SearchBudget budget_;
  std::vector<char> used_;
  std::vector<Residue> seq_;
  std::vector<Residue> sums_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::chrono::steady_clock::time_point start_;
};

std::string join(const std::vector<Residue>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

}  // namespace

SearchResult backtracking_search(const SubsetSpec& subset, int t, const SearchBudget& budget) {
  if (t < 1 || t >= static_cast<int>(subset.size())) {
    throw std::invalid_argument("backtracking_search: need 1 <= t < k");
  }
  return DepthFirst(subset, t, false, budget).run();
}

SearchResult sequencing_search(const SubsetSpec& subset, const SearchBudget& budget) {
  return DepthFirst(subset, static_cast<int>(subset.size()), true, budget).run();
}

ConstructResult construct_t3(const SubsetSpec& subset, const SearchBudget& fallback_budget) {
  const int k = static_cast<int>(subset.size());
  const Modulus& m = subset.modulus();
  if (k < 4) throw std::invalid_argument("construct_t3: needs k >= 4");

  if (k <= 9) {
    // Every subset of size <= 9 has a sequencing or R-sequencing; find one rather than assume it.
    SearchResult r = sequencing_search(subset, fallback_budget);
    if (r.status != SearchStatus::found || !is_t_weak_sequencing(*r.ordering, 3)) {
      throw InvariantError("construct_t3: sequencing search returned " + to_string(r.status) +
                           " for set {" + join(subset.elements()) + "} mod " + std::to_string(m.value()));
    }
    return {std::move(*r.ordering), "sequencing-search"};
  }

  const Ordering prefix = greedy_prefix(subset, 3, k - 4, {Variant::main, true});
  std::vector<Residue> tail;
  for (Residue x : subset.elements()) {
    if (std::find(prefix.sequence().begin(), prefix.sequence().end(), x) == prefix.sequence().end()) {
      tail.push_back(x);
    }
  }
  std::sort(tail.begin(), tail.end());

  std::vector<Residue> sums = partial_sums(prefix).sums;
  const std::size_t h = prefix.size();
  sums.resize(h + 5);
  do {
    bool ok = true;
    for (std::size_t j = h + 1; j <= h + 4 && ok; ++j) {
      sums[j] = m.add(sums[j - 1], tail[j - h - 1]);
      for (std::size_t i = j >= 3 ? j - 3 : 0; i + 1 < j; ++i) {
        if (sums[i] == sums[j]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      std::vector<Residue> seq = prefix.sequence();
      seq.insert(seq.end(), tail.begin(), tail.end());
      return {Ordering(m, std::move(seq)), "greedy-prefix+tail"};
    }
  } while (std::next_permutation(tail.begin(), tail.end()));

  throw InvariantError("construct_t3: no arrangement of the last four elements works; n=" +
                       std::to_string(m.value()) + " prefix=(" + join(prefix.sequence()) + ") tail={" +
                       join(tail) + "}");
}

LowCollisionResult find_low_collision_ordering(const SubsetSpec& subset, int t, std::uint64_t seed,
                                               std::uint64_t restarts) {
  const int k = static_cast<int>(subset.size());
  if (t < 2 || t >= k) throw std::invalid_argument("find_low_collision_ordering: need 2 <= t < k");
  if (restarts == 0) throw std::invalid_argument("find_low_collision_ordering: restarts must be >= 1");
  const Modulus& m = subset.modulus();
  std::mt19937_64 gen(seed);
  std::vector<Residue> items = subset.elements();
  std::vector<Residue> sums(items.size() + 1, 0);
  std::vector<Residue> best;
  std::size_t best_count = 0;
  std::uint64_t used = 0;
  for (std::uint64_t r = 0; r < restarts; ++r) {
    partial_shuffle(gen, std::span<Residue>(items), items.size());
    for (std::size_t i = 0; i < items.size(); ++i) sums[i + 1] = m.add(sums[i], items[i]);
    std::size_t c = count_window_collisions(sums, t);
    ++used;
    if (best.empty() || c < best_count) {
      best = items;
      best_count = c;
    }
    if (best_count == 0) break;
  }
  LowCollisionResult out{Ordering(m, std::move(best)), best_count, false, used};
  out.bound_met = best_count + 2 <= static_cast<std::size_t>(t);
  return out;
}

std::vector<std::vector<Residue>> all_nonzero_subsets(std::int64_t n, int k) {
  std::vector<std::vector<Residue>> out;
  if (k < 1 || k > n - 1) return out;
  std::vector<Residue> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

namespace {

ExhaustReport make_report(const Modulus& n, int t, int k_lo, int k_hi) {
  ExhaustReport rep;
  rep.n = n.value();
  rep.t = t;
  rep.k_lo = k_lo;
  rep.k_hi = k_hi;
  if (t < 1) throw std::invalid_argument("exhaustive_check: t must be >= 1");
  if (k_lo > k_hi) throw std::invalid_argument("exhaustive_check: empty k range");
  return rep;
}

void tally(ExhaustReport& rep, int k, const std::vector<std::vector<Residue>>& sets,
           const std::vector<SearchStatus>& status) {
  ExhaustRow row;
  row.k = k;
  row.subsets = sets.size();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    switch (status[i]) {
      case SearchStatus::found: ++row.sequenceable; break;
      case SearchStatus::none:
        ++row.counterexamples;
        rep.counterexamples.push_back(sets[i]);
        break;
      case SearchStatus::budget_exhausted:
        ++row.undecided;
        rep.undecided_sets.push_back(sets[i]);
        break;
    }
  }
  rep.rows.push_back(row);
}

}  // namespace

ExhaustReport exhaustive_check(const Modulus& n, int t, int k_lo, int k_hi, const SearchBudget& budget,
                               int threads) {
  ExhaustReport rep = make_report(n, t, k_lo, k_hi);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  for (int k = std::max(k_lo, t + 1); k <= std::min<std::int64_t>(k_hi, n.value() - 1); ++k) {
    const auto sets = all_nonzero_subsets(n.value(), k);
    std::vector<SearchStatus> status(sets.size());
    const std::int64_t count = static_cast<std::int64_t>(sets.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt)
    for (std::int64_t i = 0; i < count; ++i) {
      status[i] = backtracking_search(SubsetSpec(n, sets[i]), t, budget).status;
    }
    tally(rep, k, sets, status);
  }
  return rep;
}

ExhaustReport exhaustive_check_serial(const Modulus& n, int t, int k_lo, int k_hi, const SearchBudget& budget) {
  ExhaustReport rep = make_report(n, t, k_lo, k_hi);
  for (int k = std::max(k_lo, t + 1); k <= std::min<std::int64_t>(k_hi, n.value() - 1); ++k) {
    const auto sets = all_nonzero_subsets(n.value(), k);
    std::vector<SearchStatus> status;
    status.reserve(sets.size());
    for (const auto& s : sets) status.push_back(backtracking_search(SubsetSpec(n, s), t, budget).status);
    tally(rep, k, sets, status);
  }
  return rep;
}

}  // namespace wseq
