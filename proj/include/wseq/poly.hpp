#ifndef WSEQ_POLY_HPP
#define WSEQ_POLY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wseq/zn.hpp"

namespace wseq {

using BigInt = mpz_class;

/// A degree-1 form sum(coeff * x_var). Variables are 0-based internally.
struct LinearFactor {
  struct Term {
    int var;
    int coeff;
    friend auto operator<=>(const Term&, const Term&) = default;
  };
  std::vector<Term> terms;  // sorted by var, no zero coefficients

  int min_var() const { return terms.front().var; }
  int max_var() const { return terms.back().var; }

  static LinearFactor difference(int hi, int lo);   // x_hi - x_lo
  static LinearFactor interval(int first, int last);  // x_first + ... + x_last

  friend auto operator<=>(const LinearFactor&, const LinearFactor&) = default;
};

enum class Family { F, P, Pbar, Q, Qbar, Htop, Hbartop };

std::string to_string(Family f);
Family parse_family(const std::string& s);

struct FamilyParams {
  int k = 0;
  int t = 0;
  int ell = 0;
  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

/// A product of linear forms, factors kept in canonical (sorted) order.
struct FactorSystem {
  int num_vars = 0;
  std::vector<LinearFactor> factors;
  Family family = Family::P;
  FamilyParams params;

  std::size_t degree() const noexcept { return factors.size(); }
};

struct Monomial {
  std::vector<int> exponents;
  long total() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial parse_monomial(const std::string& text);
std::string to_string(const Monomial& m);

/// Raised when a computation would exceed its configured memory cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds F_k, P_{k,t}, Pbar_{k,t}, Q_{t,l}, Qbar_{t,l}, and the top-degree parts of the
/// reduced polynomials for a fixed prefix of h = k - l elements (Htop, Hbartop).
FactorSystem build_factor_system(Family family, const FamilyParams& params);

std::size_t system_degree(const FactorSystem& sys);

enum class CoefficientMethod { automatic, baseline, interval_dp };

std::string to_string(CoefficientMethod m);
CoefficientMethod parse_method(const std::string& s);

struct CoefficientOptions {
  CoefficientMethod method = CoefficientMethod::automatic;
  int threads = 0;                                 // 0: OpenMP default
  std::uint64_t memory_cap_bytes = 8ULL << 30;     // estimated bytes of live state
  bool sort_factors = true;                        // baseline only: ascending max variable
};

/// Honours WSEQ_MEMORY_CAP and WSEQ_THREADS when set.
CoefficientOptions default_coefficient_options();

/// Exact coefficient of `target` in the expanded product. `automatic` uses the interval
/// DP whenever the system has the Vandermonde-times-intervals shape, else the baseline.
BigInt coefficient(const FactorSystem& sys, const Monomial& target, const CoefficientOptions& opts = {});

/// Sequential product over factors with variable-closing projection.
BigInt coefficient_baseline(const FactorSystem& sys, const Monomial& target, const CoefficientOptions& opts = {});

/// Signed sum over Vandermonde permutations, with the interval factors distributed by a
/// left-to-right DP keyed on (used exponents, pending factors per right endpoint).
BigInt coefficient_interval_dp(const FactorSystem& sys, const Monomial& target,
                               const CoefficientOptions& opts = {});

/// True when every pair (i < j) has exactly one factor x_j - x_i and all other factors
/// are all-ones contiguous intervals.
bool has_interval_shape(const FactorSystem& sys);

using SparsePolynomial = std::map<std::vector<int>, BigInt>;

/// Full expansion, no pruning. Throws ResourceError past `max_terms`.
SparsePolynomial expand_product(const FactorSystem& sys, std::size_t max_terms = 2'000'000);

/// Independent check: reads the target off the full expansion.
BigInt coefficient_oracle(const FactorSystem& sys, const Monomial& target, std::size_t max_terms = 2'000'000);

/// Product of the factor values at `point`, reduced mod p.
Residue evaluate_system(const FactorSystem& sys, std::span<const Residue> point, const Modulus& p);

std::string factor_to_string(const LinearFactor& f);

}  // namespace wseq

#endif  // WSEQ_POLY_HPP
