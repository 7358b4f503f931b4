#include <omp.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <unordered_map>

#include "wseq/poly.hpp"

namespace wseq {

namespace {

constexpr int kMaxVars = 32;

struct ExponentKey {
  std::array<std::uint8_t, kMaxVars> e{};
  friend bool operator==(const ExponentKey&, const ExponentKey&) = default;
};

struct DpKey {
  std::uint64_t mask = 0;                       // Vandermonde exponents already used
  std::array<std::uint8_t, kMaxVars> pending{};  // unassigned factors by right endpoint
  friend bool operator==(const DpKey&, const DpKey&) = default;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t w) {
  h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  return h * 0xFF51AFD7ED558CCDULL;
}

std::uint64_t hash_bytes(const std::uint8_t* p) {
  std::uint64_t words[kMaxVars / 8];
  std::memcpy(words, p, sizeof(words));
  std::uint64_t h = 0;
  for (auto w : words) h = mix(h, w);
  return h;
}

struct ExponentHash {
  std::size_t operator()(const ExponentKey& k) const { return hash_bytes(k.e.data()); }
};

struct DpHash {
  std::size_t operator()(const DpKey& k) const { return mix(hash_bytes(k.pending.data()), k.mask); }
};

template <class Key>
using Entries = std::vector<std::pair<Key, BigInt>>;

int resolve_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

std::uint64_t bytes_per_state(std::size_t key_size) { return key_size + sizeof(mpz_t) + 64; }

[[noreturn]] void throw_cap(std::uint64_t states, std::uint64_t per_state, std::uint64_t cap) {
  throw ResourceError("coefficient extraction needs about " + std::to_string(states * per_state) +
                      " bytes for " + std::to_string(states) + " states, over the memory cap of " +
                      std::to_string(cap) + " bytes (set WSEQ_MEMORY_CAP or --memory-cap)");
}

// One layer of a state-expansion DP. `expand(key, value, emit)` calls
// emit(new_key, value, weight, negate) for every successor. States are sharded by
// hash so the merge runs in parallel; the multiset of (key, value) pairs produced is
// independent of the thread count.
template <class Key, class Hash, class Expand>
Entries<Key> expand_layer(const Entries<Key>& entries, int threads, std::uint64_t cap, Expand&& expand) {
  using Map = std::unordered_map<Key, BigInt, Hash>;
  const std::uint64_t per_state = bytes_per_state(sizeof(Key));
  const std::int64_t count = static_cast<std::int64_t>(entries.size());

  auto accumulate = [](Map& m, const Key& key, const BigInt& value, std::uint64_t weight, bool negate) {
    BigInt& slot = m[key];
    if (negate) {
      mpz_submul_ui(slot.get_mpz_t(), value.get_mpz_t(), weight);
    } else {
      mpz_addmul_ui(slot.get_mpz_t(), value.get_mpz_t(), weight);
    }
  };

  if (threads <= 1) {
    Map out;
    for (const auto& [key, value] : entries) {
      expand(key, value, [&](const Key& nk, const BigInt& v, std::uint64_t w, bool neg) {
        accumulate(out, nk, v, w, neg);
      });
      if (out.size() * per_state > cap) throw_cap(out.size(), per_state, cap);
    }
    Entries<Key> next;
    next.reserve(out.size());
    for (auto& [k, v] : out) {
      if (v != 0) next.emplace_back(k, std::move(v));
    }
    return next;
  }

  const int shards = threads;
  std::vector<std::vector<Map>> local(threads, std::vector<Map>(shards));
  std::atomic<std::uint64_t> live{0};
  std::atomic<bool> over{false};
  Hash hasher;

#pragma omp parallel num_threads(threads)
  {
    auto& mine = local[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t i = 0; i < count; ++i) {
      if (over.load(std::memory_order_relaxed)) continue;
      const auto& [key, value] = entries[i];
      expand(key, value, [&](const Key& nk, const BigInt& v, std::uint64_t w, bool neg) {
        Map& shard = mine[hasher(nk) % shards];
        const std::size_t before = shard.size();
        accumulate(shard, nk, v, w, neg);
        if (shard.size() != before && (live.fetch_add(1, std::memory_order_relaxed) + 1) * per_state > cap) {
          over.store(true, std::memory_order_relaxed);
        }
      });
    }
  }
  if (over) throw_cap(live.load(), per_state, cap);

  std::vector<Map> merged(shards);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int s = 0; s < shards; ++s) {
    Map& dst = merged[s];
    for (int th = 0; th < threads; ++th) {
      for (auto& [k, v] : local[th][s]) dst[k] += v;
      Map().swap(local[th][s]);
    }
  }
  Entries<Key> next;
  for (auto& m : merged) {
    for (auto& [k, v] : m) {
      if (v != 0) next.emplace_back(k, std::move(v));
    }
  }
  return next;
}

void check_target(const FactorSystem& sys, const Monomial& target) {
  if (static_cast<int>(target.exponents.size()) != sys.num_vars) {
    throw std::invalid_argument("monomial has " + std::to_string(target.exponents.size()) +
                                " exponents but the system has " + std::to_string(sys.num_vars) + " variables");
  }
  for (int e : target.exponents) {
    if (e < 0) throw std::invalid_argument("negative exponent in monomial");
  }
  if (sys.num_vars > kMaxVars) {
    throw std::invalid_argument("coefficient extraction supports at most " + std::to_string(kMaxVars) + " variables");
  }
}

std::uint64_t binomial(int n, int r) {
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return c;
}

}  // namespace

CoefficientOptions default_coefficient_options() {
  CoefficientOptions opts;
  if (const char* cap = std::getenv("WSEQ_MEMORY_CAP")) opts.memory_cap_bytes = std::strtoull(cap, nullptr, 10);
  if (const char* th = std::getenv("WSEQ_THREADS")) opts.threads = std::atoi(th);
  return opts;
}

bool has_interval_shape(const FactorSystem& sys) {
  const int n = sys.num_vars;
  if (n < 1 || n > kMaxVars) return false;
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  std::size_t diffs = 0;
  for (const auto& f : sys.factors) {
    if (f.terms.empty()) return false;
    const bool all_ones =
        std::all_of(f.terms.begin(), f.terms.end(), [](const auto& t) { return t.coeff == 1; });
    const bool contiguous = f.max_var() - f.min_var() + 1 == static_cast<int>(f.terms.size());
    if (all_ones && contiguous) continue;
    if (f.terms.size() == 2 && f.terms[0].coeff == -1 && f.terms[1].coeff == 1) {
      char& s = seen[static_cast<std::size_t>(f.terms[0].var) * n + f.terms[1].var];
      if (s) return false;
      s = 1;
      ++diffs;
      continue;
    }
    return false;
  }
  return diffs == static_cast<std::size_t>(n) * (n - 1) / 2;
}

BigInt coefficient(const FactorSystem& sys, const Monomial& target, const CoefficientOptions& opts) {
  switch (opts.method) {
    case CoefficientMethod::baseline: return coefficient_baseline(sys, target, opts);
    case CoefficientMethod::interval_dp: return coefficient_interval_dp(sys, target, opts);
    case CoefficientMethod::automatic: break;
  }
  return has_interval_shape(sys) ? coefficient_interval_dp(sys, target, opts)
                                 : coefficient_baseline(sys, target, opts);
}

BigInt coefficient_baseline(const FactorSystem& sys, const Monomial& target, const CoefficientOptions& opts) {
  check_target(sys, target);
  const int n = sys.num_vars;
  const auto& goal = target.exponents;
  if (target.total() != static_cast<long>(sys.degree())) return 0;  // the product is homogeneous
  for (int e : goal) {
    if (e > 255) return 0;
  }

  std::vector<const LinearFactor*> order;
  for (const auto& f : sys.factors) order.push_back(&f);
  if (opts.sort_factors) {
    std::stable_sort(order.begin(), order.end(),
                     [](const LinearFactor* a, const LinearFactor* b) { return a->max_var() < b->max_var(); });
  }

  std::vector<int> remaining(n, 0);
  for (const auto* f : order) {
    for (const auto& term : f->terms) ++remaining[term.var];
  }
  for (int v = 0; v < n; ++v) {
    if (goal[v] > remaining[v]) return 0;
  }

  const int threads = resolve_threads(opts.threads);
  Entries<ExponentKey> states;
  states.emplace_back(ExponentKey{}, BigInt(1));
  for (const auto* f : order) {
    for (const auto& term : f->terms) --remaining[term.var];
    states = expand_layer<ExponentKey, ExponentHash>(
        states, threads, opts.memory_cap_bytes, [&](const ExponentKey& key, const BigInt& value, auto&& emit) {
          for (const auto& term : f->terms) {
            if (key.e[term.var] >= goal[term.var]) continue;
            ExponentKey next = key;
            ++next.e[term.var];
            // Close the projection: every variable of f must still be able to reach its target.
            bool alive = true;
            for (const auto& other : f->terms) {
              if (goal[other.var] - next.e[other.var] > remaining[other.var]) {
                alive = false;
                break;
              }
            }
            if (!alive) continue;
            emit(next, value, static_cast<std::uint64_t>(std::abs(term.coeff)), term.coeff < 0);
          }
        });
    if (states.empty()) return 0;
  }
  ExponentKey want{};
  for (int v = 0; v < n; ++v) want.e[v] = static_cast<std::uint8_t>(goal[v]);
  BigInt total = 0;
  for (const auto& [k, v] : states) {
    if (k == want) total += v;
  }
  return total;
}

BigInt coefficient_interval_dp(const FactorSystem& sys, const Monomial& target, const CoefficientOptions& opts) {
  check_target(sys, target);
  if (!has_interval_shape(sys)) {
    throw std::invalid_argument("interval DP needs a full Vandermonde block times contiguous all-ones factors");
  }
  const int n = sys.num_vars;
  const auto& goal = target.exponents;
  if (target.total() != static_cast<long>(sys.degree())) return 0;

  // starts[v][r]: interval factors covering v..r.
  std::vector<std::array<int, kMaxVars>> starts(n);
  for (auto& row : starts) row.fill(0);
  std::vector<int> starting_after(n + 1, 0);  // factors whose first variable is > v
  for (const auto& f : sys.factors) {
    if (f.terms.size() == 2 && f.terms[0].coeff == -1) continue;
    ++starts[f.min_var()][f.max_var()];
  }
  for (int v = n - 1; v >= 0; --v) {
    int c = 0;
    for (int r = 0; r < n; ++r) c += starts[v][r];
    starting_after[v] = starting_after[v + 1] + c;
  }
  // Pending counts must fit a byte and binomial weights must fit 64 bits.
  for (int v = 0; v < n; ++v) {
    double bits = 0;
    for (int r = v; r < n; ++r) {
      int cnt = 0;
      for (int u = 0; u <= v; ++u) cnt += starts[u][r];
      if (cnt > 255) throw std::invalid_argument("too many overlapping factors for the interval DP");
      bits += std::log2(static_cast<double>(binomial(cnt, cnt / 2)));
    }
    if (bits > 62) throw std::invalid_argument("interval DP weights would overflow 64 bits");
  }
  std::vector<long> goal_after(n + 1, 0);  // sum of goal[u] for u > v - 1
  for (int v = n - 1; v >= 0; --v) goal_after[v] = goal_after[v + 1] + goal[v];
  const long exponent_total = static_cast<long>(n) * (n - 1) / 2;

  const int threads = resolve_threads(opts.threads);
  Entries<DpKey> states;
  states.emplace_back(DpKey{}, BigInt(1));

  for (int v = 0; v < n; ++v) {
    states = expand_layer<DpKey, DpHash>(
        states, threads, opts.memory_cap_bytes, [&](const DpKey& key, const BigInt& value, auto&& emit) {
          std::array<int, kMaxVars> pend{};
          for (int r = v; r < n; ++r) pend[r] = key.pending[r] + starts[v][r];
          const int forced = pend[v];
          if (forced > goal[v]) return;
          std::array<int, kMaxVars> open{};
          int n_open = 0;
          for (int r = v + 1; r < n; ++r) {
            if (pend[r] > 0) open[n_open++] = r;
          }
          std::array<int, kMaxVars> take{};
          // Enumerate how many pending factors of each endpoint class are assigned to x_v.
          auto rec = [&](auto&& self, int idx, int assigned, std::uint64_t weight) -> void {
            if (idx == n_open) {
              const int e = goal[v] - forced - assigned;
              if (e < 0 || e >= n || ((key.mask >> e) & 1U)) return;
              DpKey next;
              next.mask = key.mask | (std::uint64_t{1} << e);
              long pending_total = 0;
              for (int r = v + 1; r < n; ++r) {
                int left = pend[r];
                for (int q = 0; q < n_open; ++q) {
                  if (open[q] == r) left -= take[q];
                }
                next.pending[r] = static_cast<std::uint8_t>(left);
                pending_total += left;
              }
              // Degree balance: what is left to place must exactly fill the remaining targets.
              const long unused = exponent_total - [&] {
                long s = 0;
                for (int b = 0; b < n; ++b) {
                  if ((next.mask >> b) & 1U) s += b;
                }
                return s;
              }();
              if (unused + pending_total + starting_after[v + 1] != goal_after[v + 1]) return;
              const bool negate = std::popcount(key.mask >> (e + 1)) & 1;
              emit(next, value, weight, negate);
              return;
            }
            const int r = open[idx];
            for (int c = 0; c <= pend[r]; ++c) {
              if (forced + assigned + c > goal[v]) break;
              take[idx] = c;
              self(self, idx + 1, assigned + c, weight * binomial(pend[r], c));
            }
          };
          rec(rec, 0, 0, 1);
        });
    if (states.empty()) return 0;
  }
  BigInt total = 0;
  for (const auto& [k, v] : states) total += v;
  return total;
}

}  // namespace wseq
