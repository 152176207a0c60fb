#pragma once

// Exact 64-bit integer and modular arithmetic shared by every other module.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace romanoff {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

struct PrimePower {
  u64 prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of a positive integer. Primes are strictly increasing
/// and every exponent is at least one; n = 1 has no factors.
class Factorization {
 public:
  Factorization() = default;
  /// Validates the invariants and throws DomainError if they do not hold.
  Factorization(u64 n, std::vector<PrimePower> factors);

  u64 value() const { return n_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  bool squarefree() const;
  int mobius() const;
  /// Largest prime factor, or kUnitMarker for n = 1.
  u64 largest_prime() const;
  /// Euler totient.
  u64 totient() const;
  /// Exponent of p in n (0 when p does not divide n).
  unsigned exponent_of(u64 p) const;

 private:
  u64 n_ = 1;
  std::vector<PrimePower> factors_;
};

/// P+(1). Compares below every prime, so 1 passes any "P+(d) < y" filter.
inline constexpr u64 kUnitMarker = 1;

/// Largest accepted input for factorize and friends.
inline constexpr u64 kMaxInput = u64{1} << 63;

struct OrderRecord {
  u64 base;
  u64 modulus;
  u64 order;
};

u64 gcd(u64 a, u64 b);
u64 mul_mod(u64 a, u64 b, u64 m);

/// a^e mod m in [0, m). Throws DomainError for m = 0.
u64 pow_mod(u64 a, u64 e, u64 m);

/// Reduces a signed value into [0, m).
u64 reduce_mod(i128 a, u64 m);

/// Modular inverse of a modulo m; nullopt when gcd(a, m) != 1.
std::optional<u64> inverse_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// Throws DomainError for n = 0 or n > 2^63.
Factorization factorize(u64 n);

int mobius(u64 n);
/// Largest prime dividing n; kUnitMarker when n = 1.
u64 largest_prime_factor(u64 n);

/// Multiplicative order of a modulo d via totient factorization and divisor
/// descent. e(a, 1) = 1 by convention. Throws DomainError when gcd(a, d) != 1.
OrderRecord mult_order(u64 a, u64 d);

/// Jacobi symbol (a / n) for odd n >= 1.
int jacobi(i64 a, u64 n);

/// (delta / p). For p = 2 delta must be 0 or 1 mod 4 and the value follows the
/// mod-8 rule; for odd prime p it is the Legendre symbol.
int kronecker_symbol(i64 delta, u64 p);

/// Smallest j >= 0 with 2^j = l (mod d), or nullopt when l is a unit outside
/// the subgroup generated by 2. Baby-step/giant-step over a group of size
/// e2(d). Throws DomainError for even d and NotCoprimeError when gcd(l, d) != 1.
std::optional<u64> discrete_log_base2(u64 l, u64 d);

/// Integer square root: largest r with r*r <= n.
u64 isqrt(u64 n);

/// Largest r with r^3 <= n.
u64 icbrt(u64 n);

}  // namespace romanoff
