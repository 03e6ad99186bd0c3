#include "dioph/limit_test.hpp"

#include <algorithm>
#include <cmath>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

constexpr mpfr_prec_t kMinPhasePrecision = 192;

// Signed fractional part y - round(y); the integer shift is exact.
Real centered_fraction(const Real& y) {
  return y - Real::from_integer(y.round_mid(), y.precision());
}

long double sinc(long double v) {
  if (std::fabs(v) < 1e-8L) return 1.0L - v * v / 6.0L;
  return std::sin(v) / v;
}

struct ReducedPhase {
  Real fraction;  // m*alpha - round(m*alpha)
  Real phase;     // sin(pi * fraction)
};

ReducedPhase reduce(const Real& alpha, long long m) {
  const mpfr_prec_t prec = std::max(alpha.precision(), kMinPhasePrecision);
  Real y = alpha.with_precision(prec) * Real::from_integer(to_mpz(m), prec);
  Real f = centered_fraction(y);
  return {f, sin(Real::pi(prec) * f)};
}

}  // namespace

double kernel_closed_form(double t, std::uint64_t x, double floor) {
  const long double lt = t;
  const long double s = std::sin(lt);
  if (std::fabs(s) < floor) {
    throw SingularPoint("t is within the singular floor of a multiple of pi");
  }
  const long double n = 2.0L * static_cast<long double>(x) + 1.0L;
  return static_cast<double>(std::sin(n * lt) / s);
}

std::complex<double> kernel_brute(double t, std::uint64_t x,
                                  std::uint64_t cap) {
  if (x > cap) throw CapExceeded("kernel_brute: x exceeds cap");
  const long double two_t = 2.0L * static_cast<long double>(t);
  long double re = 1.0L;  // n = 0
  long double im = 0.0L;
  for (std::uint64_t k = 1; k <= x; ++k) {
    const long double a = two_t * static_cast<long double>(k);
    const long double c = std::cos(a);
    const long double s = std::sin(a);
    re += c;  // n = +k
    im += s;
    re += c;  // n = -k
    im -= s;
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

Real sin_pi_multiple(const Real& alpha, long long m) {
  return abs(reduce(alpha, m).phase);
}

KernelSample limit_test_partial(const Real& alpha, long long m,
                                std::uint64_t x) {
  if (m == 0) throw InvalidArgument("m = 0 is degenerate");
  if (x == 0) throw InvalidArgument("x must be at least 1");
  KernelSample sample;
  sample.x = x;
  sample.m = m;
  const long double two_x = 2.0L * static_cast<long double>(x);
  const long double terms = two_x + 1.0L;

  ReducedPhase r = reduce(alpha, m);
  long double sum;
  if (r.fraction.is_exact() && sgn(*r.fraction.exact()) == 0) {
    sum = terms;  // every term is 1
  } else if (r.phase.certified_sign() != 0) {
    const mpfr_prec_t prec = r.fraction.precision();
    Real g = r.fraction * Real::from_integer(to_mpz(x) * 2 + 1, prec);
    // Reduce (2x+1)*fraction modulo 2 so sin(pi g) keeps full accuracy.
    Real half = g / Real::from_integer(2, prec);
    g = g - Real::from_integer(half.round_mid() * 2, prec);
    Real numerator = sin(Real::pi(prec) * g);
    sum = static_cast<long double>((numerator / r.phase).mid_double());
  } else {
    // The phase is not separated from an integer at this precision; use the
    // sinc form at the midpoint, which is continuous through the pole.
    const long double f = r.fraction.mid_double();
    const long double pi = 3.14159265358979323846264338327950288L;
    sum = terms * sinc(pi * terms * f) / sinc(pi * f);
  }
  sample.re = static_cast<double>(sum / two_x);
  sample.im = 0.0;
  sample.modulus = std::fabs(sample.re);
  return sample;
}

std::optional<double> decay_envelope(const Real& alpha, long long m,
                                     std::uint64_t x) {
  Real s = sin_pi_multiple(alpha, m);
  if (s.certified_sign() <= 0) return std::nullopt;
  // 1 / (2x * lower(|sin|)), rounded up.
  mpq_class bound = 1 / (mpq_class(to_mpz(x) * 2) * s.lower());
  BigFloat out(53);
  mpfr_set_q(out.get(), bound.get_mpq_t(), MPFR_RNDU);
  return mpfr_get_d(out.get(), MPFR_RNDU);
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::RationalLike:
      return "rational-like";
    case Verdict::IrrationalLike:
      return "irrational-like";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::vector<std::uint64_t> decay_grid(std::uint64_t x_max) {
  std::vector<std::uint64_t> grid;
  for (std::uint64_t decade = 10; decade <= x_max; decade *= 10) {
    for (std::uint64_t step : {1U, 2U, 5U}) {
      const std::uint64_t x = decade * step;
      if (x < x_max) grid.push_back(x);
    }
    if (decade > x_max / 10) break;
  }
  grid.push_back(x_max);
  return grid;
}

Classification classify(const Real& alpha, std::string label,
                        const ClassifierConfig& config) {
  if (config.m_max < 1) throw InvalidArgument("m_max must be at least 1");
  if (config.x_max < 1000) throw InvalidArgument("x_max must be at least 1000");
  Classification result;
  result.config = config;
  const std::vector<std::uint64_t> grid = decay_grid(config.x_max);
  const double decay_level =
      config.decay_factor / static_cast<double>(config.x_max);

  bool all_decayed = true;
  for (long long m = 1; m <= config.m_max; ++m) {
    DecayCurve curve;
    curve.alpha = label;
    curve.m = m;
    if (auto env = decay_envelope(alpha, m, 1)) curve.bound_constant = 2 * *env;
    for (std::uint64_t x : grid) {
      curve.samples.push_back(limit_test_partial(alpha, m, x));
    }
    const double last = curve.samples.back().modulus;
    if (last > config.saturation && !result.saturating_m) {
      result.saturating_m = m;
    }
    if (!(last < decay_level)) all_decayed = false;
    result.curves.push_back(std::move(curve));
  }
  if (result.saturating_m) {
    result.verdict = Verdict::RationalLike;
  } else if (all_decayed) {
    result.verdict = Verdict::IrrationalLike;
  } else {
    result.verdict = Verdict::Inconclusive;
  }
  return result;
}

double discrepancy(const Real& alpha, std::uint64_t n_points,
                   std::uint64_t cap) {
  if (n_points == 0) throw InvalidArgument("n_points must be positive");
  if (n_points > cap) throw CapExceeded("discrepancy: N exceeds cap");

  mpq_class value = alpha.is_exact() ? *alpha.exact() : alpha.mid().to_rational();
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  mpq_class frac = value - whole;
  mpz_class scaled = mpz_class(1) << 128;
  scaled *= frac.get_num();
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), frac.get_den_mpz_t());
  unsigned __int128 step = 0;
  mpz_class low = scaled & mpz_class("18446744073709551615");
  mpz_class high = scaled >> 64;
  step = (static_cast<unsigned __int128>(high.get_ui()) << 64) | low.get_ui();

  std::vector<std::uint64_t> points(n_points);
  unsigned __int128 acc = 0;
  for (std::uint64_t n = 0; n < n_points; ++n) {
    acc += step;  // wraps modulo 2^128
    points[n] = static_cast<std::uint64_t>(acc >> 64);
  }
  std::sort(points.begin(), points.end());

  const long double scale = 18446744073709551616.0L;  // 2^64
  const long double count = static_cast<long double>(n_points);
  long double worst = 0;
  for (std::uint64_t i = 0; i < n_points; ++i) {
    const long double xi = static_cast<long double>(points[i]) / scale;
    const long double above = static_cast<long double>(i + 1) / count - xi;
    const long double below = xi - static_cast<long double>(i) / count;
    worst = std::max({worst, above, below});
  }
  return static_cast<double>(worst);
}

}  // namespace dioph
