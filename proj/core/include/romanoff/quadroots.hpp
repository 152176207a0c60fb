#pragma once

// Counting and enumerating solutions of z^2 = a (mod m).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "romanoff/arith.hpp"

namespace romanoff {

/// The congruence z^2 = a (mod m), with an optional window 1 <= z <= y.
class CongruenceSpec {
 public:
  /// Reduces a into [0, m). Throws DomainError for m = 0 or y outside [2, m].
  CongruenceSpec(i64 a, u64 m, std::optional<u64> y = std::nullopt);

  u64 residue() const { return a_; }
  u64 modulus() const { return m_; }
  std::optional<u64> window() const { return y_; }

 private:
  u64 a_;
  u64 m_;
  std::optional<u64> y_;
};

/// delta = p^(2 ell) * delta0 with ell maximal subject to delta0 = 0 or 1 (mod 4).
struct DiscriminantDecomposition {
  i64 delta;
  u64 prime;
  unsigned ell;
  i64 delta0;
};

/// Throws DomainError for delta = 0 or non-prime p.
DiscriminantDecomposition decompose_discriminant(i64 delta, u64 p);

/// Number of z in [0, p^e) with z^2 = a (mod p^e), evaluated from the
/// discriminant case analysis (delta = 4a) rather than by search.
/// Returns 1 for e = 0. Throws DomainError when p is not prime and
/// OverflowError when p^e does not fit in 64 bits.
u64 count_roots_prime_power(i64 a, u64 p, unsigned e);

/// Number of z in [0, m) with z^2 = a (mod m): product over the prime powers of m.
u64 count_roots(i64 a, u64 m);
u64 count_roots(i64 a, const Factorization& m);

/// Sorted roots in [0, m). Throws BudgetError when more than max_roots exist.
std::vector<u64> enumerate_roots(i64 a, u64 m, u64 max_roots = u64{1} << 24);

/// N(y, m; a): number of z with 1 <= z <= y and z^2 = a (mod m). Requires 2 <= y <= m.
u64 count_roots_up_to(i64 a, u64 m, u64 y);

/// Square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks
/// with a deterministic non-residue scan). nullopt when a is a non-residue.
std::optional<u64> sqrt_mod_prime(u64 a, u64 p);

/// n <= 4 sqrt(m), checked exactly as n^2 <= 16 m.
bool within_sqrt_bound(u64 count, u64 m);

/// N <= 4 y^(2/3) + 1, checked exactly as (N - 1)^3 <= 64 y^2.
bool within_window_bound(u64 count, u64 y);

struct Prop1Report {
  u64 m_max = 0;
  u64 checked = 0;
  double max_ratio = 0.0;  // max n_m / sqrt(m)
  u64 witness_a = 0;
  u64 witness_m = 1;
  std::optional<CongruenceSpec> violation;
};

/// Scans every m <= m_max and every a in [0, m).
Prop1Report verify_prop1(u64 m_max);

struct WindowTriple {
  u64 a;
  u64 m;
  u64 y;
};

struct Prop2Report {
  u64 checked = 0;
  double max_ratio = 0.0;  // max N / y^(2/3)
  WindowTriple witness{0, 2, 2};
  std::optional<WindowTriple> violation;
};

Prop2Report verify_prop2(std::span<const WindowTriple> grid);

/// Seeded grid with m <= m_max. Half of the residues are drawn as squares so
/// that the window counts are not dominated by zero.
std::vector<WindowTriple> random_window_grid(std::size_t size, u64 m_max, u64 seed);

struct OracleMismatch {
  u64 a;
  u64 m;
  u64 formula;
  u64 brute;
};

struct OracleReport {
  u64 moduli = 0;
  u64 checked = 0;
  std::optional<OracleMismatch> mismatch;
  double max_ratio = 0.0;  // max n_m / sqrt(m) over the scanned moduli
  std::optional<CongruenceSpec> sqrt_bound_violation;
};

/// count_roots against a squaring histogram for every m <= m_max and every a.
OracleReport verify_count_roots(u64 m_max);

/// count_roots_prime_power against a squaring histogram for every prime
/// power p^e <= limit (e >= 1) and every a in [0, p^e).
OracleReport verify_prime_power_counts(u64 limit);

}  // namespace romanoff
