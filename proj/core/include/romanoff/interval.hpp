#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace romanoff {

inline constexpr unsigned kDefaultPrecisionBits = 96;

/// Closed interval [lo, hi] of binary floating-point values at a fixed
/// precision. Every operation rounds the lower end down and the upper end up,
/// so the true real value is always enclosed.
class Interval {
 public:
  explicit Interval(unsigned precision_bits = kDefaultPrecisionBits);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  static Interval exact(long value, unsigned precision_bits = kDefaultPrecisionBits);
  static Interval from_rational(const mpq_class& q, unsigned precision_bits = kDefaultPrecisionBits);
  /// 1 / (d * sqrt(e)).
  static Interval inverse_root_term(unsigned long d, unsigned long e,
                                    unsigned precision_bits = kDefaultPrecisionBits);
  /// scale * sqrt(e) / d.
  static Interval scaled_root_over(const mpz_class& scale, unsigned long e, unsigned long d,
                                   unsigned precision_bits = kDefaultPrecisionBits);
  /// v^(2/3).
  static Interval cbrt_square(unsigned long v, unsigned precision_bits = kDefaultPrecisionBits);
  /// log(log(y)), y >= 3.
  static Interval log_log(unsigned long y, unsigned precision_bits = kDefaultPrecisionBits);

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(lo_)); }

  Interval& operator+=(const Interval& other);
  Interval& operator-=(const Interval& other);
  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  /// Scaling of a nonnegative interval by a nonnegative integer.
  Interval& operator*=(const mpz_class& factor);
  Interval& operator/=(unsigned long divisor);
  /// Quotient of positive intervals.
  friend Interval operator/(const Interval& a, const Interval& b);

  Interval log() const;

  double lower() const;
  double upper() const;
  double mid() const;
  double width() const;
  bool contains(double v) const;

  /// Every point of a lies strictly below every point of b.
  friend bool certainly_less(const Interval& a, const Interval& b);
  friend bool overlaps(const Interval& a, const Interval& b);

  /// Midpoint with `digits` significant decimal digits, trailing zeros trimmed.
  std::string to_string(int digits) const;
  std::string to_string() const { return to_string(decimal_digits()); }
  std::string lower_string(int digits) const;
  std::string upper_string(int digits) const;
  /// Decimal digits the precision supports.
  int decimal_digits() const;

  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace romanoff
