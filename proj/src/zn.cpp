#include "wseq/zn.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <unordered_set>

namespace wseq {

namespace {

constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;

void check_residues(const Modulus& m, const std::vector<Residue>& xs, const char* what) {
  std::unordered_set<Residue> seen;
  seen.reserve(xs.size() * 2);
  for (Residue x : xs) {
    if (x <= 0 || x >= m.value()) {
      throw std::invalid_argument(std::string(what) + ": element " + std::to_string(x) +
                                  " not in [1, " + std::to_string(m.value() - 1) + "]");
    }
    if (!seen.insert(x).second) {
      throw std::invalid_argument(std::string(what) + ": duplicate element " + std::to_string(x));
    }
  }
}

}  // namespace

Modulus::Modulus(std::int64_t n) : n_(n) {
  if (n < 2 || n >= kMaxModulus) {
    throw std::invalid_argument("modulus must satisfy 2 <= n < 2^31, got " + std::to_string(n));
  }
}

SubsetSpec::SubsetSpec(Modulus m, std::vector<Residue> elements)
    : modulus_(m), elements_(std::move(elements)) {
  check_residues(modulus_, elements_, "subset");
  if (elements_.empty()) throw std::invalid_argument("subset: must be nonempty");
  std::sort(elements_.begin(), elements_.end());
}

bool SubsetSpec::contains(Residue x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

Ordering::Ordering(Modulus m, std::vector<Residue> sequence)
    : modulus_(m), sequence_(std::move(sequence)) {
  check_residues(modulus_, sequence_, "ordering");
}

SubsetSpec Ordering::as_subset() const { return SubsetSpec(modulus_, sequence_); }

std::vector<Residue> parse_residue_list(std::string_view text, const Modulus& m) {
  std::vector<Residue> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) throw std::invalid_argument("empty entry in residue list '" + std::string(text) + "'");
    std::int64_t v = 0;
    const char* first = tok.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("not an integer: '" + std::string(tok) + "'");
    }
    if (v == 0 || v >= m.value() || v <= -m.value()) {
      throw std::invalid_argument("entry " + std::string(tok) + " must be a nonzero residue with |x| < " +
                                  std::to_string(m.value()));
    }
    out.push_back(m.reduce(v));
    pos = comma + 1;
  }
  return out;
}

PartialSums partial_sums(const Ordering& ordering) {
  const Modulus& m = ordering.modulus();
  PartialSums ps;
  ps.sums.reserve(ordering.size() + 1);
  ps.sums.push_back(0);
  for (Residue a : ordering.sequence()) ps.sums.push_back(m.add(ps.sums.back(), a));
  return ps;
}

OrderingClass classify_ordering(const Ordering& ordering) {
  if (ordering.size() == 0) throw std::invalid_argument("classify_ordering: k must be >= 1");
  const auto s = partial_sums(ordering).sums;
  const std::size_t k = ordering.size();
  std::unordered_set<Residue> seen(s.begin(), s.end());
  if (seen.size() == k + 1) return OrderingClass::sequencing;
  if (s[k] != 0) return OrderingClass::neither;
  // s_0..s_{k-1} distinct and none of s_1..s_{k-1} equal to 0.
  std::unordered_set<Residue> head(s.begin(), s.end() - 1);
  return head.size() == k ? OrderingClass::r_sequencing : OrderingClass::neither;
}

std::string to_string(OrderingClass c) {
  switch (c) {
    case OrderingClass::sequencing: return "sequencing";
    case OrderingClass::r_sequencing: return "r-sequencing";
    case OrderingClass::neither: return "neither";
  }
  return "neither";
}

std::vector<IndexPair> window_collisions(std::span<const Residue> sums, int t) {
  std::vector<IndexPair> out;
  const int last = static_cast<int>(sums.size()) - 1;
  for (int i = 0; i < last; ++i) {
    for (int j = i + 1; j <= std::min(last, i + t); ++j) {
      if (sums[i] == sums[j]) out.push_back({i, j});
    }
  }
  return out;
}

std::size_t count_window_collisions(std::span<const Residue> sums, int t) {
  std::size_t count = 0;
  const int last = static_cast<int>(sums.size()) - 1;
  for (int i = 0; i < last; ++i) {
    for (int j = i + 1; j <= std::min(last, i + t); ++j) count += sums[i] == sums[j];
  }
  return count;
}

std::vector<IndexPair> t_weak_violations(const Ordering& ordering, int t) {
  const int k = static_cast<int>(ordering.size());
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (t >= k) {
    throw std::invalid_argument("t-weak sequencing requires t < k (t=" + std::to_string(t) +
                                ", k=" + std::to_string(k) + ")");
  }
  const auto ps = partial_sums(ordering);
  return window_collisions(ps.sums, t);
}

bool is_t_weak_sequencing(const Ordering& ordering, int t) {
  return t_weak_violations(ordering, t).empty();
}

bool cmpp_admissible(const SubsetSpec& subset) {
  const Modulus& m = subset.modulus();
  for (Residue x : subset.elements()) {
    Residue y = m.neg(x);
    if (y != x && subset.contains(y)) return false;
  }
  return true;
}

}  // namespace wseq
