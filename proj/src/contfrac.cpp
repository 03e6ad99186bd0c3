#include "dioph/contfrac.hpp"

#include <utility>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

mpz_class floor_of(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

ContinuedFraction expand_rational(mpq_class value, std::size_t max_terms) {
  ContinuedFraction cf;
  while (cf.quotients.size() < max_terms) {
    mpz_class a = floor_of(value);
    cf.quotients.push_back(a);
    value -= a;
    if (sgn(value) == 0) {
      cf.terminates = true;
      break;
    }
    value = 1 / value;
  }
  return cf;
}

}  // namespace

ContinuedFraction expand(const Real& x, std::size_t max_terms,
                         std::string source) {
  if (!x.is_finite()) throw InvalidArgument("cannot expand a non-finite value");
  if (max_terms == 0) throw InvalidArgument("max_terms must be positive");

  if (x.is_exact()) {
    ContinuedFraction cf = expand_rational(*x.exact(), max_terms);
    cf.source = std::move(source);
    return cf;
  }

  ContinuedFraction cf;
  cf.source = std::move(source);
  mpq_class lo = x.lower();
  mpq_class hi = x.upper();
  // Invariant: every point of the enclosure has complete quotient in [lo, hi].
  while (cf.quotients.size() < max_terms) {
    mpz_class a = floor_of(lo);
    if (floor_of(hi) != a) {
      cf.exhausted_at = cf.quotients.size();
      break;
    }
    cf.quotients.push_back(a);
    if (cf.quotients.size() == max_terms) break;
    lo -= a;
    hi -= a;
    if (sgn(lo) == 0) {
      // The enclosure touches the integer a; the next quotient is unbounded.
      cf.exhausted_at = cf.quotients.size();
      break;
    }
    mpq_class next_lo = 1 / hi;
    hi = 1 / lo;
    lo = std::move(next_lo);
  }
  if (cf.quotients.empty()) {
    throw PrecisionExhausted(0, "integer part is not certified");
  }
  return cf;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf,
                                    std::size_t count) {
  if (count > cf.certified_len()) {
    throw InvalidArgument("requested " + std::to_string(count) +
                          " convergents but only " +
                          std::to_string(cf.certified_len()) +
                          " quotients are certified");
  }
  std::vector<Convergent> out;
  out.reserve(count);
  mpz_class p_prev2 = 0, p_prev = 1;
  mpz_class q_prev2 = 1, q_prev = 0;
  for (std::size_t n = 0; n < count; ++n) {
    const mpz_class& a = cf.quotients[n];
    mpz_class p = a * p_prev + p_prev2;
    mpz_class q = a * q_prev + q_prev2;
    out.push_back({n, p, q});
    p_prev2 = std::move(p_prev);
    p_prev = std::move(p);
    q_prev2 = std::move(q_prev);
    q_prev = std::move(q);
  }
  return out;
}

mpq_class fold_quotients(const std::vector<mpz_class>& quotients,
                         std::size_t len) {
  if (len == 0 || len > quotients.size()) {
    throw InvalidArgument("fold length out of range");
  }
  mpq_class value(quotients[len - 1]);
  for (std::size_t i = len - 1; i-- > 0;) {
    value = mpq_class(quotients[i]) + 1 / value;
  }
  return value;
}

SandwichReport check_sandwich(const Real& x, const Convergent& c,
                              const std::optional<Convergent>& next) {
  const mpfr_prec_t prec = x.precision();
  Real approx = Real::from_rational(mpq_class(c.p, c.q), prec);
  SandwichReport report{abs(x - approx), std::nullopt,
                        mpq_class(1, c.q * c.q), false, false, false};
  report.upper_bound.canonicalize();

  if (x.is_exact() && *x.exact() == mpq_class(c.p, c.q)) {
    report.terminating = true;
    report.upper_holds = true;
    report.lower_holds = false;
    if (next) {
      report.lower_bound = mpq_class(1, 2 * next->q * c.q);
      report.lower_bound->canonicalize();
    }
    return report;
  }

  Real slack_up =
      Real::from_rational(report.upper_bound, prec) - report.distance;
  int s = slack_up.certified_sign();
  if (s == 0) throw PrecisionExhausted(c.n, "upper sandwich bound");
  report.upper_holds = s > 0;

  if (next) {
    report.lower_bound = mpq_class(1, 2 * next->q * c.q);
    report.lower_bound->canonicalize();
    Real slack_down =
        report.distance - Real::from_rational(*report.lower_bound, prec);
    s = slack_down.certified_sign();
    if (s == 0) throw PrecisionExhausted(c.n, "lower sandwich bound");
    report.lower_holds = s > 0;
  }
  return report;
}

bool quotient_bound_holds(const Real& x, const Convergent& c,
                          const mpz_class& next_quotient) {
  const mpfr_prec_t prec = x.precision();
  Real distance = abs(x - Real::from_rational(mpq_class(c.p, c.q), prec));
  mpq_class bound(1, next_quotient * c.q * c.q);
  bound.canonicalize();
  int s = (Real::from_rational(bound, prec) - distance).certified_sign();
  if (s == 0) throw PrecisionExhausted(c.n, "quotient bound");
  return s > 0;
}

BestApproxReport best_approx_oracle(const Real& x, const Convergent& c,
                                    std::chrono::milliseconds budget) {
  if (!c.q.fits_ulong_p() || c.q < 1) {
    throw InvalidArgument("scan bound must be a positive machine integer");
  }
  const std::uint64_t q_max = c.q.get_ui();
  const mpfr_prec_t prec = x.precision();
  const bool timed = budget != std::chrono::milliseconds::max();
  const auto deadline = std::chrono::steady_clock::now() +
                        (timed ? budget : std::chrono::milliseconds(0));

  Real target = abs(x * Real::from_integer(c.q, prec) -
                    Real::from_integer(c.p, prec));
  BestApproxReport report{c, target, 0, false, {}, {}, std::nullopt,
                          std::nullopt};

  for (std::uint64_t q = 1; q <= q_max; ++q) {
    if (timed && (q & 1023U) == 0 && std::chrono::steady_clock::now() > deadline) {
      return report;
    }
    Real scaled = x * Real::from_integer(mpz_class(q), prec);
    mpz_class nearest = scaled.round_mid();
    for (int offset = -1; offset <= 1; ++offset) {
      mpz_class p = nearest + offset;
      if (q == q_max && p == c.p) continue;
      Real value = abs(scaled - Real::from_integer(p, prec));
      int s = (target - value).certified_sign();
      if (s > 0) {
        report.violations.emplace_back(p, q);
      } else if (s == 0) {
        report.unresolved.emplace_back(p, q);
      }
      if (!report.runner_up_value ||
          mpfr_less_p(value.mid().get(), report.runner_up_value->mid().get())) {
        report.runner_up = std::make_pair(p, q);
        report.runner_up_value = value;
      }
    }
    report.scanned_up_to = q;
  }
  report.complete = true;
  return report;
}

}  // namespace dioph
