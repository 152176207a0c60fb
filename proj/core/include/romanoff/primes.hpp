#pragma once

#include <cstdint>
#include <vector>

#include "romanoff/arith.hpp"

namespace romanoff {

inline constexpr u64 kDefaultMemoryBudget = u64{2} << 30;  // 2 GiB

/// Primality table over [0, x], built by a segmented sieve of Eratosthenes.
class PrimeSet {
 public:
  PrimeSet() = default;

  u64 limit() const { return limit_; }
  bool contains(u64 n) const {
    return n <= limit_ && ((bits_[n >> 6] >> (n & 63)) & 1) != 0;
  }
  /// pi(limit).
  u64 count() const { return count_; }
  /// pi(n) for n <= limit; n above the limit is an error.
  u64 count_up_to(u64 n) const;
  /// All primes in increasing order.
  std::vector<u64> to_vector() const;
  std::vector<std::uint32_t> to_vector32() const;

  std::size_t memory_bytes() const { return bits_.size() * sizeof(u64); }

  /// Bytes a table for limit x occupies.
  static u64 bytes_for(u64 x) { return (x / 64 + 1) * sizeof(u64); }

 private:
  friend PrimeSet sieve_primes(u64 x, u64 memory_budget);

  u64 limit_ = 0;
  u64 count_ = 0;
  std::vector<u64> bits_;
};

/// Throws DomainError for x < 2 and BudgetError when the table would exceed
/// memory_budget bytes.
PrimeSet sieve_primes(u64 x, u64 memory_budget = kDefaultMemoryBudget);

}  // namespace romanoff
