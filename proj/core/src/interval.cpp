#include "romanoff/interval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "romanoff/errors.hpp"

namespace romanoff {

namespace {

// fmt is one of the %.*R?g conversions; the rounding letter picks the direction.
std::string format(const char* fmt, const mpfr_t v, int digits) {
  const int size = mpfr_snprintf(nullptr, 0, fmt, digits, v);
  std::vector<char> buf(static_cast<std::size_t>(size) + 1);
  mpfr_snprintf(buf.data(), buf.size(), fmt, digits, v);
  return std::string(buf.data(), static_cast<std::size_t>(size));
}

}  // namespace

Interval::Interval(unsigned precision_bits) {
  if (precision_bits < MPFR_PREC_MIN || precision_bits > 1u << 20)
    throw DomainError("Interval: unsupported precision");
  mpfr_init2(lo_, precision_bits);
  mpfr_init2(hi_, precision_bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : Interval(other.precision()) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::exact(long value, unsigned precision_bits) {
  Interval out(precision_bits);
  mpfr_set_si(out.lo_, value, MPFR_RNDD);
  mpfr_set_si(out.hi_, value, MPFR_RNDU);
  return out;
}

Interval Interval::from_rational(const mpq_class& q, unsigned precision_bits) {
  Interval out(precision_bits);
  mpfr_set_q(out.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_, q.get_mpq_t(), MPFR_RNDU);
  return out;
}

Interval Interval::inverse_root_term(unsigned long d, unsigned long e, unsigned precision_bits) {
  Interval out(precision_bits);
  mpfr_t t;
  mpfr_init2(t, precision_bits);
  // Lower end: enlarge the denominator.
  mpfr_sqrt_ui(t, e, MPFR_RNDU);
  mpfr_mul_ui(t, t, d, MPFR_RNDU);
  mpfr_ui_div(out.lo_, 1, t, MPFR_RNDD);
  mpfr_sqrt_ui(t, e, MPFR_RNDD);
  mpfr_mul_ui(t, t, d, MPFR_RNDD);
  mpfr_ui_div(out.hi_, 1, t, MPFR_RNDU);
  mpfr_clear(t);
  return out;
}

Interval Interval::scaled_root_over(const mpz_class& scale, unsigned long e, unsigned long d,
                                    unsigned precision_bits) {
  Interval out(precision_bits);
  mpfr_sqrt_ui(out.lo_, e, MPFR_RNDD);
  mpfr_mul_z(out.lo_, out.lo_, scale.get_mpz_t(), MPFR_RNDD);
  mpfr_div_ui(out.lo_, out.lo_, d, MPFR_RNDD);
  mpfr_sqrt_ui(out.hi_, e, MPFR_RNDU);
  mpfr_mul_z(out.hi_, out.hi_, scale.get_mpz_t(), MPFR_RNDU);
  mpfr_div_ui(out.hi_, out.hi_, d, MPFR_RNDU);
  return out;
}

Interval Interval::cbrt_square(unsigned long v, unsigned precision_bits) {
  Interval out(precision_bits);
  mpz_class sq(v);
  sq *= v;
  mpfr_set_z(out.lo_, sq.get_mpz_t(), MPFR_RNDD);
  mpfr_cbrt(out.lo_, out.lo_, MPFR_RNDD);
  mpfr_set_z(out.hi_, sq.get_mpz_t(), MPFR_RNDU);
  mpfr_cbrt(out.hi_, out.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::log_log(unsigned long y, unsigned precision_bits) {
  if (y < 3) throw DomainError("Interval::log_log: y must be at least 3");
  Interval out(precision_bits);
  mpfr_set_ui(out.lo_, y, MPFR_RNDD);
  mpfr_log(out.lo_, out.lo_, MPFR_RNDD);
  mpfr_log(out.lo_, out.lo_, MPFR_RNDD);
  mpfr_set_ui(out.hi_, y, MPFR_RNDU);
  mpfr_log(out.hi_, out.hi_, MPFR_RNDU);
  mpfr_log(out.hi_, out.hi_, MPFR_RNDU);
  return out;
}

Interval& Interval::operator+=(const Interval& other) {
  mpfr_add(lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& other) {
  // [a, b] - [c, d] = [a - d, b - c]
  mpfr_t t;
  mpfr_init2(t, precision());
  mpfr_sub(t, lo_, other.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, other.lo_, MPFR_RNDU);
  mpfr_swap(lo_, t);
  mpfr_clear(t);
  return *this;
}

Interval& Interval::operator*=(const mpz_class& factor) {
  if (sgn(factor) < 0 || mpfr_sgn(lo_) < 0)
    throw DomainError("Interval scaling needs nonnegative operands");
  mpfr_mul_z(lo_, lo_, factor.get_mpz_t(), MPFR_RNDD);
  mpfr_mul_z(hi_, hi_, factor.get_mpz_t(), MPFR_RNDU);
  return *this;
}

Interval& Interval::operator/=(unsigned long divisor) {
  if (divisor == 0 || mpfr_sgn(lo_) < 0)
    throw DomainError("Interval division needs a nonnegative interval and a positive divisor");
  mpfr_div_ui(lo_, lo_, divisor, MPFR_RNDD);
  mpfr_div_ui(hi_, hi_, divisor, MPFR_RNDU);
  return *this;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(a.lo_) < 0 || mpfr_sgn(b.lo_) <= 0)
    throw DomainError("Interval division needs a >= 0 and b > 0");
  Interval out(a.precision());
  mpfr_div(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_div(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw DomainError("Interval::log needs a positive interval");
  Interval out(precision());
  mpfr_log(out.lo_, lo_, MPFR_RNDD);
  mpfr_log(out.hi_, hi_, MPFR_RNDU);
  return out;
}

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid() const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  const double v = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return v;
}

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, precision());
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const double v = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return v;
}

bool Interval::contains(double v) const {
  return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
}

bool certainly_less(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi_, b.lo_); }

bool overlaps(const Interval& a, const Interval& b) {
  return mpfr_lessequal_p(a.lo_, b.hi_) && mpfr_lessequal_p(b.lo_, a.hi_);
}

std::string Interval::to_string(int digits) const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);  // exact at precision + 1 when exponents agree
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  std::string out = format("%.*RNg", m, digits);
  mpfr_clear(m);
  return out;
}

std::string Interval::lower_string(int digits) const { return format("%.*RDg", lo_, digits); }
std::string Interval::upper_string(int digits) const { return format("%.*RUg", hi_, digits); }

int Interval::decimal_digits() const {
  return std::max(1, static_cast<int>(std::floor(precision() * 0.30102999566398120)) - 1);
}

}  // namespace romanoff
