#include <algorithm>
#include <charconv>
#include <sstream>

#include "wseq/poly.hpp"

namespace wseq {

LinearFactor LinearFactor::difference(int hi, int lo) {
  if (hi == lo) throw std::invalid_argument("difference factor needs two distinct variables");
  LinearFactor f;
  if (lo < hi) {
    f.terms = {{lo, -1}, {hi, 1}};
  } else {
    f.terms = {{hi, 1}, {lo, -1}};
  }
  return f;
}

LinearFactor LinearFactor::interval(int first, int last) {
  if (first > last) throw std::invalid_argument("empty interval factor");
  LinearFactor f;
  f.terms.reserve(last - first + 1);
  for (int v = first; v <= last; ++v) f.terms.push_back({v, 1});
  return f;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::F: return "F";
    case Family::P: return "P";
    case Family::Pbar: return "Pbar";
    case Family::Q: return "Q";
    case Family::Qbar: return "Qbar";
    case Family::Htop: return "Htop";
    case Family::Hbartop: return "Hbartop";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::F, Family::P, Family::Pbar, Family::Q, Family::Qbar, Family::Htop, Family::Hbartop}) {
    if (to_string(f) == s) return f;
  }
  throw std::invalid_argument("unknown family '" + s + "' (expected F, P, Pbar, Q, Qbar, Htop, Hbartop)");
}

long Monomial::total() const {
  long s = 0;
  for (int e : exponents) s += e;
  return s;
}

Monomial parse_monomial(const std::string& text) {
  Monomial m;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string tok = text.substr(pos, comma - pos);
    tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
    int v = -1;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v < 0) {
      throw std::invalid_argument("bad exponent '" + tok + "' in monomial '" + text + "'");
    }
    m.exponents.push_back(v);
    pos = comma + 1;
  }
  return m;
}

std::string to_string(const Monomial& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) os << (i ? "," : "") << m.exponents[i];
  return os.str();
}

std::string factor_to_string(const LinearFactor& f) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (const auto& t : f.terms) {
    if (t.coeff < 0) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    if (std::abs(t.coeff) != 1) os << std::abs(t.coeff) << '*';
    os << 'x' << (t.var + 1);
    first = false;
  }
  os << ')';
  return os.str();
}

namespace {

void add_vandermonde(FactorSystem& sys, int n) {
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) sys.factors.push_back(LinearFactor::difference(j, i));
  }
}

// Windows x_{i+1} + ... + x_j, 0 <= i < j <= n, with min_len <= j - i <= max_len.
void add_windows(FactorSystem& sys, int n, int min_len, int max_len) {
  for (int i = 0; i < n; ++i) {
    for (int j = i + min_len; j <= std::min(n, i + max_len); ++j) {
      sys.factors.push_back(LinearFactor::interval(i, j - 1));
    }
  }
}

void add_prefix(FactorSystem& sys, int len, int multiplicity) {
  for (int r = 0; r < multiplicity; ++r) sys.factors.push_back(LinearFactor::interval(0, len - 1));
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument("build_factor_system: " + msg);
}

}  // namespace

FactorSystem build_factor_system(Family family, const FamilyParams& p) {
  FactorSystem sys;
  sys.family = family;
  switch (family) {
    case Family::F: {
      require(p.k >= 2, "F needs k >= 2");
      sys.params = {p.k, 0, 0};
      sys.num_vars = p.k;
      add_vandermonde(sys, p.k);
      for (int i = 0; i < p.k; ++i) {
        for (int j = i + 2; j <= p.k; ++j) {
          if (i == 0 && j == p.k) continue;
          sys.factors.push_back(LinearFactor::interval(i, j - 1));
        }
      }
      break;
    }
    case Family::P:
    case Family::Pbar: {
      require(p.k >= 2, "P families need k >= 2");
      require(p.t >= 1 && p.t < p.k, "P families need 1 <= t < k");
      sys.params = {p.k, p.t, 0};
      sys.num_vars = p.k;
      add_vandermonde(sys, p.k);
      add_windows(sys, p.k, family == Family::P ? 2 : 3, p.t);
      break;
    }
    case Family::Q:
    case Family::Qbar: {
      require(p.ell >= 1, "Q families need ell >= 1");
      require(p.t >= 2, "Q families need t >= 2");
      const bool bar = family == Family::Qbar;
      sys.params = {0, p.t, p.ell};
      sys.num_vars = p.ell;
      add_vandermonde(sys, p.ell);
      add_windows(sys, p.ell, bar ? 3 : 2, p.t);
      for (int j = 1; j <= std::min(p.t - 1, p.ell); ++j) {
        add_prefix(sys, j, (bar && j == 1) ? p.t - 2 : p.t - j);
      }
      break;
    }
    case Family::Htop:
    case Family::Hbartop: {
      require(p.ell >= 1 && p.k > p.ell, "H families need k > ell >= 1");
      require(p.t >= 2, "H families need t >= 2");
      const bool bar = family == Family::Hbartop;
      const int h = p.k - p.ell;
      sys.params = {p.k, p.t, p.ell};
      sys.num_vars = p.ell;
      add_vandermonde(sys, p.ell);
      add_windows(sys, p.ell, bar ? 3 : 2, p.t);
      for (int j = 1; j <= std::min(p.t - 1, p.ell); ++j) {
        int mult = std::min(h, p.t - j);
        if (bar && j == 1) mult -= 1;  // the length-2 crossing window is not imposed
        add_prefix(sys, j, std::max(mult, 0));
      }
      break;
    }
  }
  std::sort(sys.factors.begin(), sys.factors.end());
  return sys;
}

std::size_t system_degree(const FactorSystem& sys) { return sys.degree(); }

std::string to_string(CoefficientMethod m) {
  switch (m) {
    case CoefficientMethod::automatic: return "auto";
    case CoefficientMethod::baseline: return "baseline";
    case CoefficientMethod::interval_dp: return "interval";
  }
  return "auto";
}

CoefficientMethod parse_method(const std::string& s) {
  if (s == "auto") return CoefficientMethod::automatic;
  if (s == "baseline") return CoefficientMethod::baseline;
  if (s == "interval") return CoefficientMethod::interval_dp;
  throw std::invalid_argument("unknown method '" + s + "' (expected auto, baseline, interval)");
}

SparsePolynomial expand_product(const FactorSystem& sys, std::size_t max_terms) {
  SparsePolynomial poly;
  poly.emplace(std::vector<int>(sys.num_vars, 0), BigInt(1));
  for (const auto& f : sys.factors) {
    SparsePolynomial next;
    for (const auto& [exps, c] : poly) {
      for (const auto& term : f.terms) {
        std::vector<int> e = exps;
        ++e[term.var];
        BigInt& slot = next[e];
        slot += c * term.coeff;
      }
      if (next.size() > max_terms) {
        throw ResourceError("full expansion exceeds " + std::to_string(max_terms) + " terms");
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    poly = std::move(next);
  }
  return poly;
}

BigInt coefficient_oracle(const FactorSystem& sys, const Monomial& target, std::size_t max_terms) {
  if (static_cast<int>(target.exponents.size()) != sys.num_vars) {
    throw std::invalid_argument("monomial length does not match the number of variables");
  }
  if (target.total() > static_cast<long>(sys.degree())) return 0;
  const SparsePolynomial poly = expand_product(sys, max_terms);
  auto it = poly.find(target.exponents);
  return it == poly.end() ? BigInt(0) : it->second;
}

Residue evaluate_system(const FactorSystem& sys, std::span<const Residue> point, const Modulus& p) {
  if (static_cast<int>(point.size()) != sys.num_vars) {
    throw std::invalid_argument("evaluate_system: point length does not match the number of variables");
  }
  Residue acc = p.reduce(1);
  for (const auto& f : sys.factors) {
    std::int64_t v = 0;
    for (const auto& term : f.terms) v = p.reduce(v + p.reduce(term.coeff) * p.reduce(point[term.var]));
    acc = p.reduce(acc * v);
    if (acc == 0) break;
  }
  return acc;
}

}  // namespace wseq
