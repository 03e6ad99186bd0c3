#ifndef DIOPH_REAL_HPP
#define DIOPH_REAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

namespace dioph {

static_assert(sizeof(long) == sizeof(long long), "LP64 platform expected");

template <std::integral T>
mpz_class to_mpz(T v) {
  if constexpr (std::is_signed_v<T>) {
    return mpz_class(static_cast<long>(v));
  } else {
    return mpz_class(static_cast<unsigned long>(v));
  }
}

// Owning handle for an mpfr_t. Copies preserve the precision of the source.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  mpq_class to_rational() const;  // exact; requires a finite value

 private:
  mpfr_t value_;
};

// A real number enclosed in a ball [mid - rad, mid + rad].
//
// The midpoint is an MPFR float of `precision()` bits; the radius is a short
// float that is only ever rounded upward, so the enclosure is sound. Values
// built from integers or rationals additionally keep the exact rational and
// stay exact through + - * / and integer powers.
//
// Instances are immutable.
class Real {
 public:
  static constexpr mpfr_prec_t kRadiusBits = 64;

  Real();  // exact zero at 64 bits

  static Real from_rational(const mpq_class& value, mpfr_prec_t precision);
  static Real from_integer(const mpz_class& value, mpfr_prec_t precision);
  static Real from_double(double value, mpfr_prec_t precision);  // exact
  // Midpoint and radius as given. The radius is rounded up to kRadiusBits.
  static Real from_ball(const BigFloat& mid, const BigFloat& rad);
  // Decimal literal such as "1.4142" or "-3"; the result is exact.
  static Real parse_decimal(std::string_view text, mpfr_prec_t precision);

  static Real pi(mpfr_prec_t precision);
  static Real e(mpfr_prec_t precision);

  mpfr_prec_t precision() const { return mid_.precision(); }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<mpq_class>& exact() const { return exact_; }

  const BigFloat& mid() const { return mid_; }
  const BigFloat& rad() const { return rad_; }
  double mid_double() const;
  double rad_double() const;  // rounded up

  bool is_finite() const;

  // Exact rational endpoints of the enclosure.
  mpq_class lower() const;
  mpq_class upper() const;

  bool contains_zero() const;
  // +1 or -1 when the sign is certified, 0 otherwise (including exact zero).
  int certified_sign() const;
  // True when every point of `other` lies inside this enclosure.
  bool contains(const Real& other) const;
  bool overlaps(const Real& other) const;

  // floor(x) when it is the same integer at both endpoints.
  std::optional<mpz_class> certified_floor() const;
  // Nearest integer to the midpoint (ties away from zero).
  mpz_class round_mid() const;

  // Midpoint truncated toward zero to `digits` decimals.
  std::string to_decimal(int digits) const;

  // Same value re-rounded to a new midpoint precision. Exact values are
  // re-evaluated from their rational, inexact values keep their radius.
  Real with_precision(mpfr_prec_t precision) const;

  Real operator-() const;
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  // Throws DivisionByZero when `b` contains zero.
  friend Real operator/(const Real& a, const Real& b);

  friend Real abs(const Real& x);
  friend Real int_pow(const Real& x, unsigned exponent);
  friend Real sin(const Real& x);
  friend Real cos(const Real& x);
  friend Real exp(const Real& x);
  // Requires a certified positive argument.
  friend Real log(const Real& x);
  friend Real sqrt(const Real& x);

 private:
  Real(BigFloat mid, BigFloat rad, std::optional<mpq_class> exact);

  BigFloat mid_;
  BigFloat rad_;
  std::optional<mpq_class> exact_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real abs(const Real& x);
Real int_pow(const Real& x, unsigned exponent);
Real sin(const Real& x);
Real cos(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sqrt(const Real& x);

}  // namespace dioph

#endif  // DIOPH_REAL_HPP
