#ifndef WSEQ_ZN_HPP
#define WSEQ_ZN_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wseq {

using Residue = std::int64_t;

/// The cyclic group Z_n, 2 <= n < 2^31. All residues are kept canonical in [0, n).
class Modulus {
 public:
  explicit Modulus(std::int64_t n);

  std::int64_t value() const noexcept { return n_; }
  bool is_even() const noexcept { return n_ % 2 == 0; }

  Residue reduce(std::int64_t x) const noexcept {
    Residue r = x % n_;
    return r < 0 ? r + n_ : r;
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : n_ - a; }

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  std::int64_t n_;
};

/// A subset of Z_n \ {0}, stored sorted.
class SubsetSpec {
 public:
  SubsetSpec(Modulus m, std::vector<Residue> elements);

  const Modulus& modulus() const noexcept { return modulus_; }
  const std::vector<Residue>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(Residue x) const;

 private:
  Modulus modulus_;
  std::vector<Residue> elements_;
};

/// An ordering (a_1, ..., a_k) of distinct nonzero residues.
class Ordering {
 public:
  Ordering(Modulus m, std::vector<Residue> sequence);

  const Modulus& modulus() const noexcept { return modulus_; }
  const std::vector<Residue>& sequence() const noexcept { return sequence_; }
  std::size_t size() const noexcept { return sequence_.size(); }
  SubsetSpec as_subset() const;

  friend bool operator==(const Ordering&, const Ordering&) = default;

 private:
  Modulus modulus_;
  std::vector<Residue> sequence_;
};

struct PartialSums {
  std::vector<Residue> sums;  // s_0 = 0, ..., s_k
};

enum class OrderingClass { sequencing, r_sequencing, neither };

struct IndexPair {
  int i;
  int j;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Parses "1,2,5,-3". Signed entries map -x to n - x; zero and |x| >= n are rejected.
std::vector<Residue> parse_residue_list(std::string_view text, const Modulus& m);

PartialSums partial_sums(const Ordering& ordering);
OrderingClass classify_ordering(const Ordering& ordering);
std::string to_string(OrderingClass c);

/// All pairs (i, j), 0 <= i < j <= k, j - i <= t, with s_i = s_j. Requires 1 <= t < k.
std::vector<IndexPair> t_weak_violations(const Ordering& ordering, int t);

/// Same scan over raw partial sums; no precondition on t.
std::vector<IndexPair> window_collisions(std::span<const Residue> sums, int t);
std::size_t count_window_collisions(std::span<const Residue> sums, int t);

bool is_t_weak_sequencing(const Ordering& ordering, int t);

/// True iff A contains at most one element of every pair {x, -x}.
bool cmpp_admissible(const SubsetSpec& subset);

}  // namespace wseq

#endif  // WSEQ_ZN_HPP
