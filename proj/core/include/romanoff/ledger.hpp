#pragma once

// Finite evaluation of the harmonic-type sums behind the second-moment bound:
// the order-weighted sum S1, the smooth squarefree sum S2, Mertens partial
// sums, the small-prime product, k2 solution counts and the divisor assembly.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "romanoff/arith.hpp"
#include "romanoff/interval.hpp"

namespace romanoff {

inline constexpr u64 kDefaultWorkBudget = u64{2'000'000'000};

/// One odd squarefree d of a ledger sum.
struct LedgerRow {
  u64 d;
  int mu_sq;   // always 1
  u64 p_plus;  // kUnitMarker for d = 1
  u64 order2;  // e2(d), 1 for d = 1
  Interval term;
  std::optional<mpq_class> exact_term;  // present when the term is rational
};

enum class SumKind { s1, s2, mertens, product };

std::string_view to_string(SumKind kind);
SumKind parse_sum_kind(std::string_view text);

struct SumReport {
  SumKind kind;
  std::optional<u64> dmax;
  std::optional<u64> y;
  Interval value;
  std::optional<mpq_class> exact;
  u64 term_count = 0;
  /// mertens: sum - log log y. product: log of the product.
  std::optional<Interval> residual;
  /// product: log(product) < sum over 2 < p < y of 1/p, decided by interval comparison.
  std::optional<bool> log_bound_holds;
};

/// Rows d <= dmax, d odd squarefree, term 1/(d sqrt(e2(d))).
std::vector<LedgerRow> s1_rows(u64 dmax, unsigned precision_bits = kDefaultPrecisionBits);
SumReport s1_partial(u64 dmax, unsigned precision_bits = kDefaultPrecisionBits);

/// Odd squarefree d < dmax with P+(d) < y, increasing. Throws BudgetError when
/// more than work_budget values would be produced.
std::vector<u64> smooth_odd_squarefree(u64 dmax, u64 y, u64 work_budget = kDefaultWorkBudget);

std::vector<LedgerRow> s2_rows(u64 dmax, u64 y, unsigned precision_bits = kDefaultPrecisionBits,
                               u64 work_budget = kDefaultWorkBudget);
/// Exact rational sum of 1/d over smooth_odd_squarefree(dmax, y).
SumReport s2_partial(u64 dmax, u64 y, unsigned precision_bits = kDefaultPrecisionBits,
                     u64 work_budget = kDefaultWorkBudget);

/// Sum over primes p < y of 1/p, exact, with residual sum - log log y. y >= 3.
SumReport mertens_partial(u64 y, unsigned precision_bits = kDefaultPrecisionBits);

/// Product over primes 2 < p < y of (1 + 1/p), exact. y >= 3.
SumReport small_prime_product(u64 y, unsigned precision_bits = kDefaultPrecisionBits);

/// Number of k2 in [0 or 1, K] with d | 2^{m1^2} + 2^{m2^2} - 2^{k1^2} - 2^{k2^2},
/// via the discrete logarithm of the residue and the square roots of that
/// exponent modulo e2(d). Throws DomainError for even d.
u64 count_k2_solutions(u64 d, unsigned m1, unsigned m2, unsigned k1, u64 k_max,
                       bool zero_in_N = true);

/// Same count by direct big-integer divisibility; the reference for the above.
u64 brute_count_k2_solutions(u64 d, unsigned m1, unsigned m2, unsigned k1, u64 k_max,
                             bool zero_in_N = true);

/// count <= (floor(K / e) + 1) * 4 sqrt(e), exactly.
bool within_k2_bound(u64 count, u64 k_max, u64 order);

struct K2Instance {
  u64 d;
  unsigned m1, m2, k1;
  u64 k_max;
  u64 fast;
  u64 brute;
};

struct K2Report {
  u64 checked = 0;
  std::optional<K2Instance> mismatch;
  std::optional<K2Instance> bound_violation;
  bool holds() const { return !mismatch && !bound_violation; }
};

/// Seeded random instances: odd d <= d_max, exponents <= exp_max.
K2Report verify_k2_counts(std::size_t samples, u64 seed, u64 d_max = 10'000,
                          unsigned exp_max = 10, u64 k_max = 100, bool zero_in_N = true);

struct AssemblyReport {
  u64 m = 0, dmax = 0, y = 0;
  bool zero_in_N = true;
  u64 divisors = 0;  // number of d in the outer sum
  /// Sum over d of (1/d) #{quadruples: h != 0, d | h}.
  mpq_class lhs;
  /// Same sum accumulated quadruple-first.
  mpq_class lhs_exchanged;
  /// Contributions of d with e2(d) <= M and e2(d) > M.
  mpq_class lhs_small_order;
  mpq_class lhs_large_order;
  /// Counting bounds for the two channels.
  Interval s1_part;
  Interval s2_part;
  /// lhs / (s1_part + s2_part).
  Interval ratio;
  /// Large-order d for which the window hypothesis 2 <= M <= e2(d) fails.
  u64 window_hypothesis_failures = 0;
};

/// Throws BudgetError when (number of exponents)^4 * dmax exceeds work_budget.
AssemblyReport assembly_e13(u64 m, u64 dmax, u64 y, bool zero_in_N = true,
                            unsigned precision_bits = kDefaultPrecisionBits,
                            u64 work_budget = kDefaultWorkBudget);

}  // namespace romanoff
