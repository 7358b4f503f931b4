#ifndef WSEQ_RNG_HPP
#define WSEQ_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace wseq {

// Sampling is built only on std::mt19937_64, whose output sequence is fixed by the
// standard. Bounded draws use rejection instead of std::uniform_int_distribution,
// which is implementation-defined, so seeded results are stable across toolchains.

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the stream with the given index: splitmix64(seed ^ splitmix64(index)).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index));
}

/// Uniform integer in [0, bound), bound >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % bound;
}

/// Partial Fisher-Yates: after the call items[0..count) is a uniform ordered sample.
template <class T>
void partial_shuffle(std::mt19937_64& gen, std::span<T> items, std::size_t count) {
  const std::size_t n = items.size();
  for (std::size_t i = 0; i < count && i + 1 < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_below(gen, n - i));
    std::swap(items[i], items[j]);
  }
}

}  // namespace wseq

#endif  // WSEQ_RNG_HPP
