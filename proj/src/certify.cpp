#include <algorithm>
#include <set>

#include "wseq/certify.hpp"

namespace wseq {

std::string to_string(CertificateError::Kind k) {
  switch (k) {
    case CertificateError::Kind::zero_coefficient: return "zero_coefficient";
    case CertificateError::Kind::divisibility: return "divisibility";
    case CertificateError::Kind::degree_mismatch: return "degree_mismatch";
    case CertificateError::Kind::applicability: return "applicability";
    case CertificateError::Kind::factorization: return "factorization";
    case CertificateError::Kind::mismatch: return "mismatch";
  }
  return "unknown";
}

bool check_applicability(Variant variant, int k, int t, int ell) {
  const int lower = variant == Variant::main ? 2 * t - 1 : 2 * t - 3;
  return k - (t - 1) >= ell && ell >= lower;
}

Family certificate_family(Variant variant, const KScope& scope) {
  if (scope.type == ScopeType::at_least) return variant == Variant::main ? Family::Q : Family::Qbar;
  return variant == Variant::main ? Family::Htop : Family::Hbartop;
}

void check_scope(Variant variant, int t, int ell, const KScope& scope) {
  using K = CertificateError::Kind;
  if (t < 2 || ell < 1) throw CertificateError(K::applicability, "certificate needs t >= 2 and ell >= 1");
  if (scope.type == ScopeType::at_least) {
    if (!check_applicability(variant, scope.value, t, ell)) {
      throw CertificateError(K::applicability, "k >= " + std::to_string(scope.value) + " with t=" +
                                                   std::to_string(t) + ", ell=" + std::to_string(ell) +
                                                   " violates the " + to_string(variant) + " condition on ell");
    }
    return;
  }
  // Exact k: the first k - ell elements are fixed by the greedy prefix, which needs
  // ell >= t - 1 (main) or ell >= t - 2 (cmpp); at least one element must be fixed.
  const int prefix_min = variant == Variant::main ? t - 1 : t - 2;
  if (scope.value - ell < 1 || ell < prefix_min) {
    throw CertificateError(K::applicability, "k = " + std::to_string(scope.value) + " with ell=" +
                                                 std::to_string(ell) + " admits no prefix reduction for t=" +
                                                 std::to_string(t));
  }
}

namespace {

FactorSystem certificate_system(Variant variant, int t, int ell, const KScope& scope) {
  const Family fam = certificate_family(variant, scope);
  FamilyParams params{scope.type == ScopeType::exact ? scope.value : 0, t, ell};
  return build_factor_system(fam, params);
}

void check_monomial(int ell, const Monomial& monomial, std::size_t degree) {
  using K = CertificateError::Kind;
  if (static_cast<int>(monomial.exponents.size()) != ell) {
    throw CertificateError(K::divisibility, "monomial has " + std::to_string(monomial.exponents.size()) +
                                                " exponents, expected ell=" + std::to_string(ell));
  }
  for (std::size_t i = 0; i < monomial.exponents.size(); ++i) {
    const int g = monomial.exponents[i];
    if (g < 0 || g > ell - 1) {
      throw CertificateError(K::divisibility, "exponent " + std::to_string(g) + " of y" + std::to_string(i + 1) +
                                                  " does not divide the bounding monomial (max " +
                                                  std::to_string(ell - 1) + ")");
    }
  }
  if (monomial.total() != static_cast<long>(degree)) {
    throw CertificateError(K::degree_mismatch, "monomial degree " + std::to_string(monomial.total()) +
                                                   " differs from system degree " + std::to_string(degree));
  }
}

}  // namespace

Certificate make_certificate(Variant variant, int t, int ell, const KScope& scope, const Monomial& monomial,
                             const CoefficientOptions& coeff_opts, const FactorizeOptions& fact_opts) {
  using K = CertificateError::Kind;
  check_scope(variant, t, ell, scope);
  const FactorSystem sys = certificate_system(variant, t, ell, scope);
  check_monomial(ell, monomial, sys.degree());

  Certificate cert;
  cert.variant = variant;
  cert.t = t;
  cert.ell = ell;
  cert.k_scope = scope;
  cert.family = sys.family;
  cert.monomial = monomial;
  cert.degree = sys.degree();
  cert.coefficient = coefficient(sys, monomial, coeff_opts);
  if (cert.coefficient == 0) {
    throw CertificateError(K::zero_coefficient, "coefficient of " + to_string(monomial) + " in " +
                                                    to_string(sys.family) + " is zero");
  }
  cert.factorization = factorize(cert.coefficient, fact_opts);
  if (!cert.factorization.complete()) {
    throw CertificateError(K::factorization, "factorization incomplete: " + factored_string(cert.factorization));
  }
  for (const auto& pp : cert.factorization.factors) cert.excluded_primes.push_back(pp.prime);
  return cert;
}

void verify_certificate(const Certificate& cert, bool recompute, const CoefficientOptions& coeff_opts) {
  using K = CertificateError::Kind;
  check_scope(cert.variant, cert.t, cert.ell, cert.k_scope);
  const FactorSystem sys = certificate_system(cert.variant, cert.t, cert.ell, cert.k_scope);
  if (sys.family != cert.family) {
    throw CertificateError(K::mismatch, "certificate family " + to_string(cert.family) + " should be " +
                                            to_string(sys.family));
  }
  if (cert.degree != sys.degree()) {
    throw CertificateError(K::degree_mismatch, "recorded degree " + std::to_string(cert.degree) +
                                                   " but the rebuilt system has degree " +
                                                   std::to_string(sys.degree()));
  }
  check_monomial(cert.ell, cert.monomial, sys.degree());
  if (cert.coefficient == 0) throw CertificateError(K::zero_coefficient, "certificate coefficient is zero");
  if (!cert.factorization.complete() || cert.factorization.product() != cert.coefficient) {
    throw CertificateError(K::factorization, "factorization does not multiply back to the coefficient");
  }
  std::set<BigInt> primes;
  for (const auto& pp : cert.factorization.factors) {
    if (!is_prime(pp.prime) || pp.exp < 1) {
      throw CertificateError(K::factorization, "factor " + pp.prime.get_str() + " is not a prime power");
    }
    primes.insert(pp.prime);
  }
  std::set<BigInt> excluded(cert.excluded_primes.begin(), cert.excluded_primes.end());
  if (primes != excluded) {
    throw CertificateError(K::factorization, "excluded primes differ from the primes of the factorization");
  }
  if (recompute) {
    const BigInt c = coefficient(sys, cert.monomial, coeff_opts);
    if (c != cert.coefficient) {
      throw CertificateError(K::mismatch, "recomputed coefficient " + c.get_str() + " differs from recorded " +
                                              cert.coefficient.get_str());
    }
  }
}

namespace {

// Removes every prime factor p <= bound from |g|; returns the primes removed.
std::vector<BigInt> strip_small_primes(BigInt& g, int bound) {
  std::vector<BigInt> removed;
  for (int p = 2; p <= bound; ++p) {
    bool prime = true;
    for (int d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        prime = false;
        break;
      }
    }
    if (!prime || !mpz_divisible_ui_p(g.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    removed.emplace_back(p);
    while (mpz_divisible_ui_p(g.get_mpz_t(), static_cast<unsigned long>(p))) g /= p;
  }
  return removed;
}

}  // namespace

TheoremReport verify_theorem_coverage(Variant variant, int t, const std::vector<Certificate>& certs, int k_min) {
  if (certs.empty()) throw std::invalid_argument("verify_theorem_coverage: certificate set is empty");
  for (const auto& c : certs) {
    if (c.variant != variant || c.t != t) {
      throw std::invalid_argument("verify_theorem_coverage: certificate for (" + to_string(c.variant) + ", t=" +
                                  std::to_string(c.t) + ") in a (" + to_string(variant) + ", t=" +
                                  std::to_string(t) + ") set");
    }
  }

  TheoremReport rep;
  rep.variant = variant;
  rep.t = t;
  rep.k_min = k_min;
  rep.base_case = "k <= " + std::to_string(k_min - 1) +
                  ": every such subset of Z_p \\ {0} is sequenceable (prior result, assumed)";

  int last = k_min;
  for (const auto& c : certs) last = std::max(last, c.k_scope.value);
  // Beyond `last` only "k >= bound" certificates apply and all of them do.
  for (int k = k_min; k <= last + 1; ++k) {
    CoverageRow row;
    row.k = k;
    row.and_above = k == last + 1;
    row.gcd = 0;
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const KScope& s = certs[i].k_scope;
      const bool applies = row.and_above ? s.type == ScopeType::at_least : s.contains(k);
      if (!applies) continue;
      row.certificates.push_back(i);
      mpz_gcd(row.gcd.get_mpz_t(), row.gcd.get_mpz_t(), certs[i].coefficient.get_mpz_t());
    }
    const std::string label = (row.and_above ? "k >= " : "k = ") + std::to_string(k);
    if (row.certificates.empty()) {
      row.residual = 0;
      rep.gaps.push_back(label + ": no certificate applies");
    } else {
      row.residual = abs(row.gcd);
      row.discharged_by_size = strip_small_primes(row.residual, k);
      row.covered = row.residual == 1;
      if (!row.covered) {
        rep.gaps.push_back(label + ": primes dividing " + row.residual.get_str() + " are not covered");
      }
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace wseq
