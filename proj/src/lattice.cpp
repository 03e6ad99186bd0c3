#include "dioph/lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "dioph/errors.hpp"

namespace dioph {

// ---------------------------------------------------------------------------
// Families

void ScanFamily::validate() const {
  if (kind == ScanKind::SinKPiRPlusMPiS || kind == ScanKind::GapPiPowIntPi) {
    if (r < 1 || s <= r) {
      throw InvalidArgument("pi-power families require 1 <= r < s");
    }
  }
}

std::string ScanFamily::name() const {
  switch (kind) {
    case ScanKind::SinKePlusM:
      return "sin-ke+m";
    case ScanKind::SinKePiPlusM:
      return "sin-kepi+m";
    case ScanKind::SinKPiRPlusMPiS:
      return "sin-kpi^" + std::to_string(r + 1) + "+mpi^" + std::to_string(s + 1);
    case ScanKind::GapHalfOddPi:
      return "gap-half-odd-pi";
    case ScanKind::GapIntPi:
      return "gap-int-pi";
    case ScanKind::GapPiPowIntPi:
      return "gap-kpi^" + std::to_string(r) + "+mpi^" + std::to_string(s);
    case ScanKind::IntegerMultiple:
      return "int-multiple";
  }
  return "unknown";
}

ScanFamily ScanFamily::parse(const std::string& text) {
  if (text == "sin-ke+m") return {ScanKind::SinKePlusM};
  if (text == "sin-kepi+m") return {ScanKind::SinKePiPlusM};
  if (text == "gap-half-odd-pi") return {ScanKind::GapHalfOddPi};
  if (text == "gap-int-pi") return {ScanKind::GapIntPi};
  if (text == "int-multiple") return {ScanKind::IntegerMultiple};
  unsigned a = 0, b = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "sin-kpi^%u+mpi^%u%c", &a, &b, &tail) == 2) {
    if (a < 2) throw InvalidArgument("sin-kpi^a+mpi^b requires a >= 2");
    ScanFamily f{ScanKind::SinKPiRPlusMPiS, a - 1, b - 1};
    f.validate();
    return f;
  }
  if (std::sscanf(text.c_str(), "gap-kpi^%u+mpi^%u%c", &a, &b, &tail) == 2) {
    ScanFamily f{ScanKind::GapPiPowIntPi, a, b};
    f.validate();
    return f;
  }
  throw ParseError("unknown scan family '" + text + "'");
}

std::uint64_t IntRange::size() const {
  if (hi < lo) return 0;
  return static_cast<std::uint64_t>(hi - lo) + 1;
}

// ---------------------------------------------------------------------------
// Cell evaluation

namespace {

bool is_gap(ScanKind kind) {
  return kind == ScanKind::GapHalfOddPi || kind == ScanKind::GapIntPi ||
         kind == ScanKind::GapPiPowIntPi;
}

// The cell expression is k * a + m * b followed by a family-specific map.
struct Basis {
  Real a;
  Real b;
  Real pi;
};

Basis make_basis(const ScanFamily& f, mpfr_prec_t prec) {
  Real pi = Real::pi(prec);
  Real one = Real::from_integer(1, prec);
  switch (f.kind) {
    case ScanKind::SinKePlusM:
    case ScanKind::GapHalfOddPi:
    case ScanKind::GapIntPi:
      return {Real::e(prec), one, pi};
    case ScanKind::SinKePiPlusM:
      return {Real::e(prec) * pi, one, pi};
    case ScanKind::SinKPiRPlusMPiS:
      return {int_pow(pi, f.r + 1), int_pow(pi, f.s + 1), pi};
    case ScanKind::GapPiPowIntPi:
      return {int_pow(pi, f.r), int_pow(pi, f.s), pi};
    case ScanKind::IntegerMultiple:
      return {Real::e(prec), -pi, pi};
  }
  throw Error("unreachable scan kind");
}

struct CellResult {
  Real value;  // |target expression|
  std::optional<long long> line;
};

mpz_class floor_of(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

long long clamp_line(const mpz_class& r, const std::optional<IntRange>& range) {
  long long v = r.get_si();
  if (range) v = std::clamp(v, range->lo, range->hi);
  return v;
}

CellResult evaluate_cell(const ScanFamily& f, const Basis& basis, long long k,
                         long long m, const std::optional<IntRange>& lines) {
  const mpfr_prec_t prec = basis.pi.precision();
  Real v = basis.a * Real::from_integer(to_mpz(k), prec) +
           basis.b * Real::from_integer(to_mpz(m), prec);
  switch (f.kind) {
    case ScanKind::SinKePlusM:
    case ScanKind::SinKePiPlusM:
    case ScanKind::SinKPiRPlusMPiS:
      return {abs(sin(v)), std::nullopt};
    case ScanKind::IntegerMultiple:
      return {abs(v), std::nullopt};
    case ScanKind::GapIntPi:
    case ScanKind::GapPiPowIntPi: {
      // Nearest line r*pi; distance is convex in r so clamping is optimal.
      long long r = clamp_line((v / basis.pi).round_mid(), lines);
      return {abs(v - basis.pi * Real::from_integer(to_mpz(r), prec)), r};
    }
    case ScanKind::GapHalfOddPi: {
      // Nearest (2r + 1) pi / 2 has r = floor(v / pi).
      long long r = clamp_line(floor_of((v / basis.pi).mid().to_rational()), lines);
      Real line = basis.pi * Real::from_rational(mpq_class(to_mpz(2 * r + 1), 2), prec);
      return {abs(v - line), r};
    }
  }
  throw Error("unreachable scan kind");
}

double down_to_double(const mpq_class& q) {
  BigFloat out(53);
  mpfr_set_q(out.get(), q.get_mpq_t(), MPFR_RNDD);
  return mpfr_get_d(out.get(), MPFR_RNDD);
}

LatticeScanReport run_scan(const ScanFamily& family, IntRange k_range,
                           IntRange m_range, const ScanOptions& options) {
  family.validate();
  if (k_range.size() == 0 || m_range.size() == 0) {
    throw InvalidArgument("scan ranges must be nonempty");
  }
  if (k_range.size() == 1 && m_range.size() == 1 && k_range.lo == 0 &&
      m_range.lo == 0) {
    throw InvalidArgument("the box holds only the trivial point (0, 0)");
  }
  if (options.start_precision < 64 ||
      options.max_precision < options.start_precision) {
    throw InvalidArgument("invalid precision schedule");
  }

  LatticeScanReport report;
  report.family = family;
  report.k_range = k_range;
  report.m_range = m_range;

  std::map<mpfr_prec_t, Basis> bases;
  auto basis_at = [&](mpfr_prec_t prec) -> const Basis& {
    auto it = bases.find(prec);
    if (it == bases.end()) it = bases.emplace(prec, make_basis(family, prec)).first;
    return it->second;
  };

  std::optional<Real> best;
  std::optional<mpq_class> best_lower;
  for (long long k = k_range.lo; k <= k_range.hi; ++k) {
    for (long long m = m_range.lo; m <= m_range.hi; ++m) {
      if (k == 0 && m == 0) continue;
      ++report.cells;
      std::optional<CellResult> cell;
      mpfr_prec_t prec = options.start_precision;
      for (;; prec *= 2) {
        prec = std::min(prec, options.max_precision);
        CellResult attempt =
            evaluate_cell(family, basis_at(prec), k, m, options.line_range);
        if (attempt.value.certified_sign() > 0) {
          cell = std::move(attempt);
          break;
        }
        if (prec >= options.max_precision) break;
      }
      report.precision_used = std::max(report.precision_used, prec);
      if (!cell) {
        report.unresolved.emplace_back(k, m);
        continue;
      }
      if (options.keep_cells) {
        report.cell_values.push_back(
            {k, m, cell->line, cell->value.mid_double(), prec});
      }
      mpq_class lower = cell->value.lower();
      if (!best_lower || lower < *best_lower) best_lower = lower;
      if (!best || mpfr_less_p(cell->value.mid().get(), best->mid().get())) {
        best = cell->value;
        report.argmin = {k, m};
        report.argmin_line = cell->line;
      }
    }
  }
  if (best) {
    report.min_abs = best->mid_double();
    report.min_lower_bound = down_to_double(*best_lower);
  }
  return report;
}

}  // namespace

LatticeScanReport sine_scan(const ScanFamily& family, IntRange k_range,
                            IntRange m_range, const ScanOptions& options) {
  return run_scan(family, k_range, m_range, options);
}

LatticeScanReport lattice_gap(const ScanFamily& family, IntRange k_range,
                              IntRange m_range, const ScanOptions& options) {
  if (!is_gap(family.kind)) {
    throw InvalidArgument("lattice_gap requires a gap family");
  }
  return run_scan(family, k_range, m_range, options);
}

LatticeScanReport integer_multiple_check(long long k_max, long long m_max,
                                         const ScanOptions& options) {
  if (k_max < 1 || m_max < 1) throw InvalidArgument("ranges must be >= 1");
  return run_scan({ScanKind::IntegerMultiple}, {1, k_max}, {1, m_max}, options);
}

// ---------------------------------------------------------------------------
// Sine product

SineProduct sine_product(const Real& x, std::uint64_t terms) {
  if (terms == 0) throw InvalidArgument("terms must be at least 1");
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(x.precision(), 64);
  const Real pi = Real::pi(prec);
  const Real ratio = (x * x) / (pi * pi);
  const Real one = Real::from_integer(1, prec);

  Real product = x;
  for (std::uint64_t n = 1; n <= terms; ++n) {
    mpz_class n2 = to_mpz(n);
    n2 *= n2;
    product = product * (one - ratio / Real::from_integer(n2, prec));
  }

  SineProduct out{product, std::nullopt, std::nullopt, terms};
  Real headroom = Real::from_integer(to_mpz(terms + 1), prec) * pi -
                  abs(x);
  if (headroom.certified_sign() <= 0) return out;

  Real tail_sum = ratio / Real::from_integer(to_mpz(terms), prec);
  Real tail = abs(product);
  if (tail_sum.upper() < 1) tail = tail * tail_sum;
  out.tail_bound = tail;

  BigFloat rad(Real::kRadiusBits);
  mpq_class widened = product.rad().to_rational() + tail.upper();
  mpfr_set_q(rad.get(), widened.get_mpq_t(), MPFR_RNDU);
  out.enclosure = Real::from_ball(product.mid(), rad);
  return out;
}

// ---------------------------------------------------------------------------
// Kronecker

std::optional<mpz_class> first_hit(const mpz_class& a_in,
                                   const mpz_class& modulus,
                                   const mpz_class& lo, const mpz_class& hi) {
  if (lo == 0) return mpz_class(0);
  mpz_class a = a_in % modulus;
  if (a < 0) a += modulus;
  if (a == 0) return std::nullopt;
  // First lap: the smallest x with a x >= lo.
  mpz_class x = (lo + a - 1) / a;
  if (a * x <= hi) return x;
  // No multiple of a lies in [lo, hi], so hi - lo < a and lo % a <= hi % a.
  // A wrap count y works iff (modulus * y) mod a lies in
  // [a - hi % a, a - lo % a]; x follows from the smallest such y.
  mpz_class lo_r = lo % a;
  mpz_class hi_r = hi % a;
  std::optional<mpz_class> y = first_hit(modulus % a, a, a - hi_r, a - lo_r);
  if (!y) return std::nullopt;
  return mpz_class((lo + modulus * *y + a - 1) / a);
}

namespace {

mpz_class frac_scaled(const mpq_class& v, const mpz_class& scale) {
  mpz_class whole = floor_of(v);
  mpq_class frac = v - whole;
  mpz_class out = scale * frac.get_num();
  mpz_fdiv_q(out.get_mpz_t(), out.get_mpz_t(), frac.get_den_mpz_t());
  return out;
}

mpz_class ceil_scaled(const mpq_class& v, const mpz_class& scale) {
  mpz_class out = scale * v.get_num();
  mpz_cdiv_q(out.get_mpz_t(), out.get_mpz_t(), v.get_den_mpz_t());
  return out;
}

mpz_class positive_mod(const mpz_class& v, const mpz_class& m) {
  mpz_class r = v % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

KroneckerSolution kronecker_solve(const Real& alpha, const Real& beta,
                                  double epsilon, std::uint64_t q_cap) {
  if (alpha.is_exact()) {
    throw InvalidArgument("alpha must be irrational-typed (not exact)");
  }
  if (!(epsilon > 0)) throw InvalidArgument("epsilon must be positive");
  if (q_cap < 1) throw InvalidArgument("q_cap must be at least 1");

  const mpfr_prec_t prec =
      std::max({alpha.precision(), beta.precision(), mpfr_prec_t{192}});
  const Real a = alpha.with_precision(prec);
  const Real b = beta.with_precision(prec);
  const mpq_class eps_q(epsilon);

  KroneckerSolution out;
  out.epsilon = epsilon;
  out.q_cap = q_cap;

  auto evaluate = [&](std::uint64_t q) {
    Real value = a * Real::from_integer(to_mpz(q), prec) - b;
    mpz_class p = value.round_mid();
    return std::make_pair(p, abs(value - Real::from_integer(p, prec)));
  };
  auto accept = [&](const Real& achieved) {
    return (Real::from_rational(eps_q, prec) - achieved).certified_sign() > 0;
  };

  // Fixed-point image: frac(alpha) -> A / M, frac(beta - epsilon) -> C / M.
  const mpz_class modulus = mpz_class(1) << 128;
  const mpz_class step = frac_scaled(a.mid().to_rational(), modulus);
  const mpz_class start =
      frac_scaled(mpq_class(b.mid().to_rational() - eps_q), modulus);
  const mpz_class width = ceil_scaled(mpq_class(2 * eps_q), modulus);
  // Truncation of A and C moves the image by at most q_cap + 1 units; the
  // ball radii add a little more. Widen the window by that much on each side
  // and let the exact check reject false candidates.
  mpq_class drift = a.rad().to_rational() * mpq_class(to_mpz(q_cap)) +
                    b.rad().to_rational();
  const mpz_class slack =
      ceil_scaled(drift, modulus) + to_mpz(q_cap) + 8;

  std::uint64_t q_start = 1;
  while (q_start <= q_cap) {
    std::optional<mpz_class> j;
    const mpz_class span = width + 2 * slack;
    if (span >= modulus) {
      j = 0;
    } else {
      const mpz_class offset = positive_mod(
          step * to_mpz(q_start) - start, modulus);
      const mpz_class lo = positive_mod(-slack - offset, modulus);
      const mpz_class hi = lo + span;
      if (hi < modulus) {
        j = first_hit(step, modulus, lo, hi);
      } else {
        auto left = first_hit(step, modulus, lo, modulus - 1);
        auto right = first_hit(step, modulus, 0, hi - modulus);
        if (left && right) {
          j = std::min(*left, *right);
        } else {
          j = left ? left : right;
        }
      }
    }
    if (!j || *j >= to_mpz(q_cap - q_start + 1)) break;
    const std::uint64_t q = q_start + j->get_ui();
    auto [p, achieved] = evaluate(q);
    if (accept(achieved)) {
      out.found = true;
      out.q = q;
      out.p = p;
      out.achieved = achieved;
      return out;
    }
    q_start = q + 1;
  }

  // Not found: report the closest approach over the whole range.
  const mpz_class target = frac_scaled(b.mid().to_rational(), modulus);
  auto to_u128 = [](const mpz_class& v) {
    mpz_class high = v >> 64;
    mpz_class low = v - (high << 64);
    return (static_cast<unsigned __int128>(high.get_ui()) << 64) | low.get_ui();
  };
  const unsigned __int128 a128 = to_u128(step);
  const unsigned __int128 t128 = to_u128(target);
  unsigned __int128 acc = 0;
  unsigned __int128 best = ~static_cast<unsigned __int128>(0);
  std::uint64_t best_q = 1;
  for (std::uint64_t q = 1; q <= q_cap; ++q) {
    acc += a128;
    const unsigned __int128 diff = acc - t128;
    const unsigned __int128 dist = std::min(diff, static_cast<unsigned __int128>(-diff));
    if (dist < best) {
      best = dist;
      best_q = q;
    }
  }
  auto [p, achieved] = evaluate(best_q);
  out.q = best_q;
  out.p = p;
  out.achieved = achieved;
  return out;
}

}  // namespace dioph
