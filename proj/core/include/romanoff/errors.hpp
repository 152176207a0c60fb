#pragma once

#include <stdexcept>
#include <string>

namespace romanoff {

/// Thrown when an argument falls outside an operation's domain (n = 0, even
/// modulus where an odd one is required, non-prime p, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by discrete_log_base2 when gcd(l, d) != 1. Kept distinct from the
/// ordinary "not in the subgroup generated by 2" outcome, which is a value.
class NotCoprimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Exact result would not fit the fixed-width integer type.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Requested run exceeds the configured memory or work budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace romanoff
