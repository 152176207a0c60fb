#include "romanoff/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "romanoff/errors.hpp"

namespace romanoff {

namespace {

constexpr u64 kTrialLimit = 1'000'000;

// Odd primes below kTrialLimit. Built once on first use; immutable afterwards.
const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    out.reserve(78'500);
    for (u64 i = 3; i <= kTrialLimit; i += 2) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (u64 j = i * i; j <= kTrialLimit; j += 2 * i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 kBatch = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 f = pollard_brent(n);
  split_large(f, out);
  split_large(n / f, out);
}

}  // namespace

Factorization::Factorization(u64 n, std::vector<PrimePower> factors)
    : n_(n), factors_(std::move(factors)) {
  if (n_ == 0) throw DomainError("Factorization: n must be positive");
  u128 product = 1;
  u64 previous = 1;
  for (const auto& f : factors_) {
    if (f.exponent == 0 || f.prime <= previous)
      throw DomainError("Factorization: primes must increase and exponents be >= 1");
    previous = f.prime;
    for (unsigned i = 0; i < f.exponent; ++i) {
      product *= f.prime;
      if (product > n_) throw DomainError("Factorization: product exceeds n");
    }
  }
  if (product != n_) throw DomainError("Factorization: product does not equal n");
}

bool Factorization::squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

int Factorization::mobius() const {
  if (!squarefree()) return 0;
  return factors_.size() % 2 == 0 ? 1 : -1;
}

u64 Factorization::largest_prime() const {
  return factors_.empty() ? kUnitMarker : factors_.back().prime;
}

u64 Factorization::totient() const {
  u64 phi = 1;
  for (const auto& f : factors_) {
    phi *= f.prime - 1;
    for (unsigned i = 1; i < f.exponent; ++i) phi *= f.prime;
  }
  return phi;
}

unsigned Factorization::exponent_of(u64 p) const {
  for (const auto& f : factors_)
    if (f.prime == p) return f.exponent;
  return 0;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 a, u64 e, u64 m) {
  if (m == 0) throw DomainError("pow_mod: modulus must be positive");
  if (m == 1) return 0;
  u64 result = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return result;
}

u64 reduce_mod(i128 a, u64 m) {
  if (m == 0) throw DomainError("reduce_mod: modulus must be positive");
  i128 r = a % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

std::optional<u64> inverse_mod(u64 a, u64 m) {
  if (m == 0) throw DomainError("inverse_mod: modulus must be positive");
  if (m == 1) return 0;
  i128 old_r = a % m, r = m;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1) return std::nullopt;
  return reduce_mod(old_s, m);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set for all n < 3.3e24.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  if (n > kMaxInput) throw DomainError("factorize: n exceeds 2^63");
  const u64 original = n;
  std::vector<PrimePower> factors;
  if ((n & 1) == 0) {
    unsigned e = 0;
    while ((n & 1) == 0) {
      n >>= 1;
      ++e;
    }
    factors.push_back({2, e});
  }
  for (u64 p : trial_primes()) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    factors.push_back({p, e});
  }
  if (n > 1) {
    // Remaining cofactor has no prime factor below the trial limit, so it is
    // prime whenever it is below the limit squared.
    if (n < kTrialLimit * kTrialLimit || is_prime(n)) {
      factors.push_back({n, 1});
    } else {
      std::vector<u64> parts;
      split_large(n, parts);
      std::sort(parts.begin(), parts.end());
      for (u64 p : parts) {
        if (!factors.empty() && factors.back().prime == p)
          ++factors.back().exponent;
        else
          factors.push_back({p, 1});
      }
    }
  }
  return Factorization(original, std::move(factors));
}

int mobius(u64 n) { return factorize(n).mobius(); }

u64 largest_prime_factor(u64 n) { return factorize(n).largest_prime(); }

OrderRecord mult_order(u64 a, u64 d) {
  if (d == 0) throw DomainError("mult_order: modulus must be positive");
  if (d == 1) return {a, d, 1};
  if (gcd(a % d, d) != 1)
    throw DomainError("mult_order: base and modulus are not coprime");
  const u64 base = a % d;
  u64 order = factorize(d).totient();
  const Factorization order_factors = factorize(order);
  for (const auto& f : order_factors.factors()) {
    for (unsigned i = 0; i < f.exponent; ++i) {
      if (pow_mod(base, order / f.prime, d) != 1) break;
      order /= f.prime;
    }
  }
  return {a, d, order};
}

int jacobi(i64 a, u64 n) {
  if (n == 0 || (n & 1) == 0) throw DomainError("jacobi: n must be odd and positive");
  u64 x = reduce_mod(a, n);
  int result = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const u64 r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, n);
    if ((x & 3) == 3 && (n & 3) == 3) result = -result;
    x %= n;
  }
  return n == 1 ? result : 0;
}

int kronecker_symbol(i64 delta, u64 p) {
  if (p == 2) {
    const u64 r4 = reduce_mod(delta, 4);
    if (r4 == 0) return 0;
    if (r4 != 1)
      throw DomainError("kronecker_symbol: (delta/2) needs delta = 0 or 1 mod 4");
    return reduce_mod(delta, 8) == 1 ? 1 : -1;
  }
  if (!is_prime(p)) throw DomainError("kronecker_symbol: p must be prime");
  return jacobi(delta, p);
}

std::optional<u64> discrete_log_base2(u64 l, u64 d) {
  if (d == 0 || (d & 1) == 0) throw DomainError("discrete_log_base2: d must be odd");
  if (d == 1) return 0;
  l %= d;
  if (gcd(l, d) != 1)
    throw NotCoprimeError("discrete_log_base2: gcd(l, d) != 1, l is not a power of 2");
  const u64 n = mult_order(2, d).order;
  const u64 m = std::max<u64>(1, isqrt(n - 1) + 1);  // ceil(sqrt(n))

  std::unordered_map<u64, u64> baby;
  baby.reserve(m);
  u64 power = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(power, j);
    power = mul_mod(power, 2, d);
  }
  // 2^{-m} = 2^{n - (m mod n)}.
  const u64 giant = pow_mod(2, (n - m % n) % n, d);
  u64 gamma = l;
  for (u64 i = 0; i * m < n; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) return (i * m + it->second) % n;
    gamma = mul_mod(gamma, giant, d);
  }
  return std::nullopt;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 icbrt(u64 n) {
  u64 r = static_cast<u64>(std::cbrt(static_cast<long double>(n)));
  auto cube = [](u64 v) { return static_cast<u128>(v) * v * v; };
  while (r > 0 && cube(r) > n) --r;
  while (cube(r + 1) <= n) ++r;
  return r;
}

}  // namespace romanoff
