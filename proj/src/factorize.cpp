#include <algorithm>
#include <map>
#include <sstream>

#include "wseq/certify.hpp"

namespace wseq {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// The first twelve primes as bases decide primality for every n < 3.3e24.
bool miller_rabin_64(u64 n) {
  if (n < 2) return false;
  static constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : bases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool fits_u64(const BigInt& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const BigInt& n) {
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    constexpr unsigned limit = 10000;
    std::vector<char> sieve(limit + 1, 1);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= limit; ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (unsigned j = i * i; j <= limit; j += i) sieve[j] = 0;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
BigInt pollard_brent(const BigInt& n, u64 c_seed, u64 max_iter) {
  BigInt y = 2 + c_seed, c = 1 + c_seed, g = 1, q = 1, x, ys;
  const u64 m = 128;
  u64 r = 1, iter = 0;
  auto f = [&](BigInt& v) {
    v = v * v + c;
    v %= n;
  };
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        f(y);
        q = (q * abs(x - y)) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      iter += m;
      if (iter > max_iter) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      f(ys);
      BigInt d = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? BigInt(0) : g;
}

}  // namespace

bool is_prime(const BigInt& n, int rounds) {
  if (n < 2) return false;
  if (fits_u64(n)) return miller_rabin_64(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), rounds) > 0;
}

BigInt Factorization::product() const {
  BigInt p = 1;
  for (const auto& pp : factors) {
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), static_cast<unsigned long>(pp.exp));
    p *= power;
  }
  for (const auto& u : unfactored) p *= u;
  return sign * p;
}

Factorization factorize(const BigInt& value, const FactorizeOptions& opts) {
  if (value == 0) throw std::invalid_argument("factorize: value must be nonzero");
  Factorization out;
  out.sign = sgn(value);
  BigInt n = abs(value);
  std::map<BigInt, int> found;
  bool used_probable = false;

  for (unsigned p : small_primes()) {
    if (BigInt(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++found[BigInt(p)];
      n /= p;
    }
  }

  std::vector<BigInt> work;
  if (n > 1) work.push_back(n);
  while (!work.empty()) {
    BigInt m = work.back();
    work.pop_back();
    if (m == 1) continue;
    if (is_prime(m, opts.probable_prime_rounds)) {
      if (!fits_u64(m)) used_probable = true;
      ++found[m];
      continue;
    }
    BigInt d = 0;
    for (int attempt = 0; attempt < opts.rho_attempts && d == 0; ++attempt) {
      d = pollard_brent(m, static_cast<u64>(attempt), opts.rho_iterations);
    }
    if (d == 0) {
      out.unfactored.push_back(m);
      continue;
    }
    work.push_back(d);
    work.push_back(m / d);
  }
  for (const auto& [p, e] : found) out.factors.push_back({p, e});
  std::sort(out.unfactored.begin(), out.unfactored.end());
  out.primality_method = used_probable ? "miller-rabin-64 (12 bases) + gmp-bpsw-mr" +
                                             std::to_string(opts.probable_prime_rounds)
                                       : "miller-rabin-64 (12 bases, deterministic)";
  return out;
}

std::string factored_string(const Factorization& f) {
  std::ostringstream os;
  if (f.sign < 0) os << '-';
  bool first = true;
  for (const auto& pp : f.factors) {
    os << (first ? "" : " * ") << pp.prime.get_str();
    if (pp.exp > 1) os << '^' << pp.exp;
    first = false;
  }
  for (const auto& u : f.unfactored) {
    os << (first ? "" : " * ") << '[' << u.get_str() << ']';
    first = false;
  }
  if (first) os << '1';
  return os.str();
}

}  // namespace wseq
