#include "dioph/real.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "dioph/errors.hpp"

namespace dioph {

// ---------------------------------------------------------------------------
// BigFloat

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

mpq_class BigFloat::to_rational() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

// ---------------------------------------------------------------------------
// Radius helpers. Every radius operation rounds toward +infinity.

namespace {

BigFloat radius_zero() { return BigFloat(Real::kRadiusBits); }

// |x| rounded up into a radius-sized float.
BigFloat abs_up(const BigFloat& x) {
  BigFloat r(Real::kRadiusBits);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

BigFloat abs_down(const BigFloat& x) {
  BigFloat r(Real::kRadiusBits);
  mpfr_abs(r.get(), x.get(), MPFR_RNDD);
  return r;
}

// Adds one ulp of `mid` to `rad` when the operation producing `mid` was
// inexact (ternary != 0). One ulp dominates any MPFR rounding mode.
void account_rounding(BigFloat& rad, const BigFloat& mid, int ternary) {
  if (ternary == 0) return;
  BigFloat ulp(Real::kRadiusBits);
  if (mpfr_zero_p(mid.get())) {
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_emin(), MPFR_RNDU);
  } else {
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid.get()) - mid.precision(),
                     MPFR_RNDU);
  }
  mpfr_add(rad.get(), rad.get(), ulp.get(), MPFR_RNDU);
}

mpz_class floor_of(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

Real::Real() : Real(BigFloat(64), radius_zero(), mpq_class(0)) {}

Real::Real(BigFloat mid, BigFloat rad, std::optional<mpq_class> exact)
    : mid_(std::move(mid)), rad_(std::move(rad)), exact_(std::move(exact)) {}

Real Real::from_rational(const mpq_class& value, mpfr_prec_t precision) {
  BigFloat mid(precision);
  BigFloat rad = radius_zero();
  int t = mpfr_set_q(mid.get(), value.get_mpq_t(), MPFR_RNDN);
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), value);
}

Real Real::from_integer(const mpz_class& value, mpfr_prec_t precision) {
  return from_rational(mpq_class(value), precision);
}

Real Real::from_double(double value, mpfr_prec_t precision) {
  return from_rational(mpq_class(value), precision);
}

Real Real::from_ball(const BigFloat& mid, const BigFloat& rad) {
  BigFloat r(kRadiusBits);
  mpfr_abs(r.get(), rad.get(), MPFR_RNDU);
  return Real(mid, std::move(r), std::nullopt);
}

Real Real::parse_decimal(std::string_view text, mpfr_prec_t precision) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  std::size_t fraction_digits = 0;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      throw ParseError("invalid decimal literal '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) {
    throw ParseError("invalid decimal literal '" + std::string(text) + "'");
  }
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, fraction_digits);
  mpq_class q(negative ? mpz_class(-num) : num, den);
  q.canonicalize();
  return from_rational(q, precision);
}

Real Real::pi(mpfr_prec_t precision) {
  BigFloat mid(precision);
  BigFloat rad = radius_zero();
  int t = mpfr_const_pi(mid.get(), MPFR_RNDN);
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

Real Real::e(mpfr_prec_t precision) {
  BigFloat one(2);
  mpfr_set_ui(one.get(), 1, MPFR_RNDN);
  BigFloat mid(precision);
  BigFloat rad = radius_zero();
  int t = mpfr_exp(mid.get(), one.get(), MPFR_RNDN);
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

// ---------------------------------------------------------------------------
// Queries

double Real::mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }

double Real::rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

bool Real::is_finite() const {
  return mpfr_number_p(mid_.get()) && mpfr_number_p(rad_.get());
}

mpq_class Real::lower() const {
  if (exact_) return *exact_;
  return mpq_class(mid_.to_rational() - rad_.to_rational());
}

mpq_class Real::upper() const {
  if (exact_) return *exact_;
  return mpq_class(mid_.to_rational() + rad_.to_rational());
}

bool Real::contains_zero() const {
  if (exact_) return sgn(*exact_) == 0;
  return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0;
}

int Real::certified_sign() const {
  if (exact_) return sgn(*exact_);
  if (mpfr_cmpabs(mid_.get(), rad_.get()) <= 0) return 0;
  return mpfr_sgn(mid_.get());
}

bool Real::contains(const Real& other) const {
  return lower() <= other.lower() && other.upper() <= upper();
}

bool Real::overlaps(const Real& other) const {
  return lower() <= other.upper() && other.lower() <= upper();
}

std::optional<mpz_class> Real::certified_floor() const {
  if (exact_) return floor_of(*exact_);
  if (!is_finite()) return std::nullopt;
  mpz_class lo = floor_of(lower());
  mpz_class hi = floor_of(upper());
  if (lo != hi) return std::nullopt;
  return lo;
}

mpz_class Real::round_mid() const {
  if (exact_) return floor_of(mpq_class(*exact_ + mpq_class(1, 2)));
  BigFloat r(mid_.precision());
  mpfr_round(r.get(), mid_.get());
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDN);
  return z;
}

std::string Real::to_decimal(int digits) const {
  char* buffer = nullptr;
  if (exact_) {
    // Truncate the exact rational so short representations stay faithful.
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpq_class scaled = *exact_ * scale;
    mpz_class t;
    mpz_tdiv_q(t.get_mpz_t(), scaled.get_num_mpz_t(),
               scaled.get_den_mpz_t());
    std::string sign = (sgn(scaled) < 0) ? "-" : "";
    std::string body = mpz_class(abs(t)).get_str();
    if (digits == 0) return sign + body;
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    return sign + body;
  }
  mpfr_asprintf(&buffer, "%.*RZf", digits, mid_.get());
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

Real Real::with_precision(mpfr_prec_t precision) const {
  if (exact_) return from_rational(*exact_, precision);
  BigFloat mid(precision);
  int t = mpfr_set(mid.get(), mid_.get(), MPFR_RNDN);
  BigFloat rad = rad_;
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

// ---------------------------------------------------------------------------
// Arithmetic

Real Real::operator-() const {
  BigFloat mid(precision());
  mpfr_neg(mid.get(), mid_.get(), MPFR_RNDN);
  std::optional<mpq_class> ex;
  if (exact_) ex = mpq_class(-*exact_);
  return Real(std::move(mid), rad_, std::move(ex));
}

Real operator+(const Real& a, const Real& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  if (a.exact_ && b.exact_) {
    return Real::from_rational(mpq_class(*a.exact_ + *b.exact_), prec);
  }
  BigFloat mid(prec);
  int t = mpfr_add(mid.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  BigFloat rad = radius_zero();
  mpfr_add(rad.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

Real operator-(const Real& a, const Real& b) { return a + (-b); }

Real operator*(const Real& a, const Real& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  if (a.exact_ && b.exact_) {
    return Real::from_rational(mpq_class(*a.exact_ * *b.exact_), prec);
  }
  BigFloat mid(prec);
  int t = mpfr_mul(mid.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);

  BigFloat rad = radius_zero();
  BigFloat term = abs_up(a.mid_);
  mpfr_mul(term.get(), term.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), term.get(), MPFR_RNDU);
  term = abs_up(b.mid_);
  mpfr_mul(term.get(), term.get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), term.get(), MPFR_RNDU);
  mpfr_mul(term.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), term.get(), MPFR_RNDU);
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

Real operator/(const Real& a, const Real& b) {
  if (b.contains_zero()) throw DivisionByZero();
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  if (a.exact_ && b.exact_) {
    return Real::from_rational(mpq_class(*a.exact_ / *b.exact_), prec);
  }
  BigFloat mid(prec);
  int t = mpfr_div(mid.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);

  // |a/b - am/bm| <= (|am| rb + |bm| ra) / (|bm| (|bm| - rb))
  BigFloat num = abs_up(a.mid_);
  mpfr_mul(num.get(), num.get(), b.rad_.get(), MPFR_RNDU);
  BigFloat term = abs_up(b.mid_);
  mpfr_mul(term.get(), term.get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(num.get(), num.get(), term.get(), MPFR_RNDU);

  BigFloat den = abs_down(b.mid_);
  BigFloat gap(Real::kRadiusBits);
  mpfr_sub(gap.get(), den.get(), b.rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(gap.get()) <= 0) throw DivisionByZero();
  mpfr_mul(den.get(), den.get(), gap.get(), MPFR_RNDD);

  BigFloat rad = radius_zero();
  mpfr_div(rad.get(), num.get(), den.get(), MPFR_RNDU);
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

Real abs(const Real& x) {
  if (x.exact_) return Real::from_rational(abs(*x.exact_), x.precision());
  // | |y| - |m| | <= |y - m|, so the radius carries over unchanged.
  BigFloat mid(x.precision());
  mpfr_abs(mid.get(), x.mid_.get(), MPFR_RNDN);
  return Real(std::move(mid), x.rad_, std::nullopt);
}

Real int_pow(const Real& x, unsigned exponent) {
  if (x.exact_) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), x.exact_->get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), x.exact_->get_den_mpz_t(), exponent);
    return Real::from_rational(mpq_class(num, den), x.precision());
  }
  Real result = Real::from_integer(1, x.precision());
  Real base = x;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

Real sin(const Real& x) {
  if (x.exact_ && sgn(*x.exact_) == 0) return x;
  BigFloat mid(x.precision());
  int t = mpfr_sin(mid.get(), x.mid_.get(), MPFR_RNDN);
  BigFloat rad = x.rad_;  // sin is 1-Lipschitz
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

Real cos(const Real& x) {
  if (x.exact_ && sgn(*x.exact_) == 0) {
    return Real::from_integer(1, x.precision());
  }
  BigFloat mid(x.precision());
  int t = mpfr_cos(mid.get(), x.mid_.get(), MPFR_RNDN);
  BigFloat rad = x.rad_;
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

Real exp(const Real& x) {
  if (x.exact_ && sgn(*x.exact_) == 0) {
    return Real::from_integer(1, x.precision());
  }
  BigFloat mid(x.precision());
  int t = mpfr_exp(mid.get(), x.mid_.get(), MPFR_RNDN);
  // |exp(m + d) - exp(m)| <= exp(m) (exp(r) - 1)
  BigFloat rad = radius_zero();
  BigFloat growth = radius_zero();
  mpfr_exp(rad.get(), x.mid_.get(), MPFR_RNDU);
  mpfr_expm1(growth.get(), x.rad_.get(), MPFR_RNDU);
  mpfr_mul(rad.get(), rad.get(), growth.get(), MPFR_RNDU);
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

Real log(const Real& x) {
  if (x.certified_sign() <= 0) {
    throw InvalidArgument("log of a value not certified positive");
  }
  if (x.exact_ && *x.exact_ == 1) return Real::from_integer(0, x.precision());
  BigFloat mid(x.precision());
  int t = mpfr_log(mid.get(), x.mid_.get(), MPFR_RNDN);
  // |log(m + d) - log(m)| <= r / (m - r)
  BigFloat low(Real::kRadiusBits);
  mpfr_sub(low.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
  BigFloat rad = radius_zero();
  mpfr_div(rad.get(), x.rad_.get(), low.get(), MPFR_RNDU);
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

Real sqrt(const Real& x) {
  if (x.exact_) {
    if (sgn(*x.exact_) < 0) throw InvalidArgument("sqrt of a negative value");
    const mpz_class& n = x.exact_->get_num();
    const mpz_class& d = x.exact_->get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) &&
        mpz_perfect_square_p(d.get_mpz_t())) {
      return Real::from_rational(mpq_class(sqrt(n), sqrt(d)), x.precision());
    }
  }
  if (x.certified_sign() <= 0) {
    throw InvalidArgument("sqrt of a value not certified positive");
  }
  BigFloat mid(x.precision());
  int t = mpfr_sqrt(mid.get(), x.mid_.get(), MPFR_RNDN);
  // |sqrt(m + d) - sqrt(m)| <= r / sqrt(m)
  BigFloat root(Real::kRadiusBits);
  mpfr_sqrt(root.get(), x.mid_.get(), MPFR_RNDD);
  BigFloat rad = radius_zero();
  mpfr_div(rad.get(), x.rad_.get(), root.get(), MPFR_RNDU);
  account_rounding(rad, mid, t);
  return Real(std::move(mid), std::move(rad), std::nullopt);
}

}  // namespace dioph
