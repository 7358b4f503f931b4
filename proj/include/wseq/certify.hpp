#ifndef WSEQ_CERTIFY_HPP
#define WSEQ_CERTIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "wseq/poly.hpp"
#include "wseq/search.hpp"

namespace wseq {

struct PrimePower {
  BigInt prime;
  int exp = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  int sign = 1;                      // -1, 0 or +1
  std::vector<PrimePower> factors;   // ascending primes
  std::vector<BigInt> unfactored;    // composites left when the effort cap was hit
  std::string primality_method;

  bool complete() const { return unfactored.empty(); }
  BigInt product() const;  // signed
};

struct FactorizeOptions {
  std::uint64_t rho_iterations = 1ULL << 24;  // per composite, per attempt
  int rho_attempts = 16;
  int probable_prime_rounds = 25;
};

/// Primes below 2^64 are proved with the deterministic 12-base Miller-Rabin test; larger
/// ones are GMP BPSW plus `probable_prime_rounds` Miller-Rabin rounds.
bool is_prime(const BigInt& n, int rounds = 25);
Factorization factorize(const BigInt& value, const FactorizeOptions& opts = {});
std::string factored_string(const Factorization& f);  // e.g. "-3^4 * 5 * 47"

enum class ScopeType { exact, at_least };

struct KScope {
  ScopeType type = ScopeType::at_least;
  int value = 0;
  bool contains(int k) const { return type == ScopeType::exact ? k == value : k >= value; }
  friend bool operator==(const KScope&, const KScope&) = default;
};

struct Certificate {
  Variant variant = Variant::main;
  int t = 0;
  int ell = 0;
  KScope k_scope;
  Family family = Family::Q;
  Monomial monomial;
  std::size_t degree = 0;
  BigInt coefficient;
  Factorization factorization;
  std::vector<BigInt> excluded_primes;
};

class CertificateError : public std::runtime_error {
 public:
  enum class Kind { zero_coefficient, divisibility, degree_mismatch, applicability, factorization, mismatch };
  CertificateError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::string to_string(CertificateError::Kind k);

/// main: k - (t - 1) >= ell >= 2t - 1.  cmpp: k - (t - 1) >= ell >= 2t - 3.
bool check_applicability(Variant variant, int k, int t, int ell);

/// Family used for a scope: Q/Qbar for "all k >= bound", Htop/Hbartop for an exact k.
Family certificate_family(Variant variant, const KScope& scope);

/// Throws CertificateError(applicability) when the scope is not covered by a valid prefix
/// reduction for this (variant, t, ell).
void check_scope(Variant variant, int t, int ell, const KScope& scope);

Certificate make_certificate(Variant variant, int t, int ell, const KScope& scope, const Monomial& monomial,
                             const CoefficientOptions& coeff_opts = {}, const FactorizeOptions& fact_opts = {});

/// Re-checks every certificate invariant; with `recompute` also re-extracts the coefficient.
void verify_certificate(const Certificate& cert, bool recompute, const CoefficientOptions& coeff_opts = {});

struct CoverageRow {
  int k = 0;
  bool and_above = false;                // row stands for every k' >= k
  std::vector<std::size_t> certificates;  // indices into the input set
  BigInt gcd;                             // 0 when nothing applies
  std::vector<BigInt> discharged_by_size;  // primes p <= k, impossible since k <= p - 1
  BigInt residual;                         // primes dividing this are not covered; 1 = none
  bool covered = false;
};

struct TheoremReport {
  Variant variant = Variant::main;
  int t = 0;
  int k_min = 13;
  std::string base_case;
  std::vector<CoverageRow> rows;
  std::vector<std::string> gaps;
  bool complete() const { return gaps.empty(); }
  std::string verdict() const { return complete() ? "complete" : "incomplete"; }
};

/// Case split over k >= k_min: where several certificates apply, a prime escapes only if
/// it divides their gcd, and primes p <= k are excluded because a k-subset of Z_p \ {0}
/// forces p > k.
TheoremReport verify_theorem_coverage(Variant variant, int t, const std::vector<Certificate>& certs,
                                      int k_min = 13);

}  // namespace wseq

#endif  // WSEQ_CERTIFY_HPP
