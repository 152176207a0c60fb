#pragma once

// Representation counts for n = p + g^{e(m_1)} + ... + g^{e(m_k)} with p prime
// and e(m) = m^2 (squares shape) or m (linear shape).

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "romanoff/arith.hpp"
#include "romanoff/primes.hpp"

namespace romanoff {

enum class ExponentShape { squares, linear };

std::string_view to_string(ExponentShape shape);
/// Accepts "squares" or "linear"; throws DomainError otherwise.
ExponentShape parse_shape(std::string_view text);

struct RepRequest {
  u64 limit = 0;
  u64 base = 2;
  unsigned terms = 2;
  ExponentShape shape = ExponentShape::squares;
  bool zero_in_N = true;  // whether m = 0 is an admissible exponent
  u64 memory_budget = kDefaultMemoryBudget;
};

struct RepStats {
  u64 limit = 0;
  u64 base = 2;
  unsigned terms = 2;
  ExponentShape shape = ExponentShape::squares;
  bool zero_in_N = true;
  u64 represented = 0;  // V(x)
  u64 sum_r = 0;
  u64 sum_r2 = 0;
  /// r-value -> number of n in [1, x] with that r (r = 0 included).
  std::map<u64, u64> histogram;
};

/// Exponents m with g^{m^2} <= x (squares) or g^m <= x (linear), in
/// increasing order, starting at 0 or 1 per zero_in_N.
std::vector<unsigned> power_exponents(u64 x, u64 g, ExponentShape shape, bool zero_in_N);

/// Distinct values s = sum of k admissible powers, with the number of ordered
/// exponent tuples producing each. Only sums s <= x are kept.
std::map<u64, u64> power_sums(u64 x, u64 g, unsigned k, ExponentShape shape, bool zero_in_N);

/// r(n) for every n in [0, x].
class RepresentationTable {
 public:
  explicit RepresentationTable(const RepRequest& request);

  const RepRequest& request() const { return request_; }
  u64 limit() const { return request_.limit; }
  u64 r(u64 n) const;
  bool representable(u64 n) const { return r(n) != 0; }
  RepStats stats() const;

  static u64 bytes_for(u64 x) { return (x + 1) * sizeof(std::uint32_t) + PrimeSet::bytes_for(x); }

 private:
  RepRequest request_;
  std::vector<std::uint32_t> counts_;
};

/// Throws DomainError for x < 4 and BudgetError above the memory budget.
RepStats representation_stats(const RepRequest& request);

/// (sum r)^2 / sum r^2. Throws DomainError when sum r^2 = 0.
mpq_class cs_lower_bound(const RepStats& stats);

/// V * sum r^2 >= (sum r)^2, in exact integer arithmetic.
bool cs_inequality_holds(const RepStats& stats);

/// pi(x/3) * M^2 where M is the number of m >= 1 with 3 g^{m^2} <= x
/// (for g = 2 this is floor(sqrt(log(x/3)/log 2))). Requires x >= 12.
u64 sum_r_lower_witness(u64 x, u64 g = 2);

struct WitnessCheck {
  u64 witness;
  u64 sum_r;
  bool holds;
};

/// Computes the witness and compares it with sum r from a (g, k = 2, squares)
/// run under the given convention.
WitnessCheck check_sum_r_witness(u64 x, u64 g, bool zero_in_N,
                                 u64 memory_budget = kDefaultMemoryBudget);

struct HQuadruple {
  unsigned m1, m2, k1, k2;
  mpz_class h;  // 2^{m1^2} + 2^{m2^2} - 2^{k1^2} - 2^{k2^2}
};

HQuadruple h_value(unsigned m1, unsigned m2, unsigned k1, unsigned k2);

/// Fixed-width h; throws OverflowError when any exponent exceeds 7.
i64 h_value_small(unsigned m1, unsigned m2, unsigned k1, unsigned k2);

struct HZeroReport {
  unsigned max_exponent = 0;
  u64 checked = 0;
  u64 zero_count = 0;
  std::optional<HQuadruple> counterexample;
  bool holds() const { return !counterexample; }
};

/// Exhaustive check over [0, max_exponent]^4 that h = 0 iff {m1,m2} = {k1,k2}.
HZeroReport verify_h_zero_iff(unsigned max_exponent);

/// Pairs (p, p + h) with both members prime and <= x. Throws DomainError for h = 0.
u64 prime_pairs(const PrimeSet& primes, i64 h);
u64 prime_pairs(u64 x, i64 h, u64 memory_budget = kDefaultMemoryBudget);

/// Product over distinct primes p | h of (1 + 1/p); p = 2 omitted unless
/// include_two. Throws DomainError for h = 0.
mpq_class singular_product(i64 h, bool include_two = true);

struct ClassicalDensity {
  u64 limit = 0;
  u64 base = 2;
  bool zero_in_N = true;
  u64 count = 0;       // #{n <= x : n = p + g^m}
  u64 odd_count = 0;   // same, restricted to odd n
  u64 odd_total = 0;   // number of odd n in [1, x]
  double ratio() const { return static_cast<double>(count) / static_cast<double>(limit); }
  double odd_ratio() const { return static_cast<double>(odd_count) / static_cast<double>(odd_total); }
};

ClassicalDensity classical_density(u64 x, u64 g = 2, bool zero_in_N = true,
                                   u64 memory_budget = kDefaultMemoryBudget);

/// Whether n = p + g^m for some prime p and admissible m.
bool classically_representable(u64 n, u64 g = 2, bool zero_in_N = true);

/// Odd n with 3 <= n <= x and no p + 2^m representation.
u64 nonrepresentable_odds(u64 x, bool zero_in_N = true,
                          u64 memory_budget = kDefaultMemoryBudget);

}  // namespace romanoff
