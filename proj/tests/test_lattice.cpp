#include <doctest.h>

#include <mpfr.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dioph/constants.hpp"
#include "dioph/contfrac.hpp"
#include "dioph/errors.hpp"
#include "dioph/lattice.hpp"
#include "dioph/report.hpp"

using namespace dioph;

namespace {

// Scalar MPFR value for brute-force oracles.
class Mp {
 public:
  explicit Mp(mpfr_prec_t p = 256) { mpfr_init2(v_, p); }
  ~Mp() { mpfr_clear(v_); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  mpfr_ptr operator*() { return v_; }
  double d() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

struct BruteMin {
  double value = 1e300;
  long long k = 0, m = 0, line = 0;
};

// min |sin(k a + m b)| over the box, (0, 0) excluded.
BruteMin brute_sine(mpfr_srcptr a, mpfr_srcptr b, IntRange kr, IntRange mr) {
  BruteMin best;
  Mp t, u;
  for (long long k = kr.lo; k <= kr.hi; ++k) {
    for (long long m = mr.lo; m <= mr.hi; ++m) {
      if (k == 0 && m == 0) continue;
      mpfr_mul_si(*t, a, k, MPFR_RNDN);
      mpfr_mul_si(*u, b, m, MPFR_RNDN);
      mpfr_add(*t, *t, *u, MPFR_RNDN);
      mpfr_sin(*t, *t, MPFR_RNDN);
      const double v = std::fabs(t.d());
      if (v < best.value) best = {v, k, m, 0};
    }
  }
  return best;
}

void set_e(mpfr_ptr x) {
  mpfr_set_ui(x, 1, MPFR_RNDN);
  mpfr_exp(x, x, MPFR_RNDN);
}

}  // namespace

TEST_CASE("family names round trip") {
  for (const char* name : {"sin-ke+m", "sin-kepi+m", "sin-kpi^2+mpi^3", "sin-kpi^3+mpi^4",
                           "gap-half-odd-pi", "gap-int-pi", "gap-kpi^1+mpi^2",
                           "int-multiple"}) {
    CHECK(ScanFamily::parse(name).name() == name);
  }
  CHECK_THROWS_AS(ScanFamily::parse("sin-kpi^3+mpi^2"), InvalidArgument);
  CHECK_THROWS_AS(ScanFamily::parse("sin-kpi^1+mpi^2"), InvalidArgument);
  CHECK_THROWS_AS(ScanFamily::parse("cos-ke+m"), ParseError);
  CHECK_THROWS_AS((ScanFamily{ScanKind::SinKPiRPlusMPiS, 2, 2}.validate()),
                  InvalidArgument);
}

TEST_CASE("single cell sin(e)") {
  auto r = sine_scan({ScanKind::SinKePlusM}, {1, 1}, {0, 0});
  CHECK(r.cells == 1);
  CHECK(r.argmin == std::make_pair(1LL, 0LL));
  CHECK(std::floor(r.min_abs * 1e6) == 410781);
  CHECK(r.complete());
}

TEST_CASE("sine scans agree with a brute-force MPFR scan") {
  Mp e, pi, epi;
  set_e(*e);
  mpfr_const_pi(*pi, MPFR_RNDN);
  mpfr_mul(*epi, *e, *pi, MPFR_RNDN);
  Mp one;
  mpfr_set_ui(*one, 1, MPFR_RNDN);

  SUBCASE("k e + m") {
    IntRange box{-50, 50};
    auto r = sine_scan({ScanKind::SinKePlusM}, box, box);
    auto b = brute_sine(*e, *one, box, box);
    CHECK(r.cells == 101 * 101 - 1);
    CHECK(r.complete());
    CHECK(r.min_lower_bound > 0);
    CHECK(r.min_lower_bound <= r.min_abs);
    CHECK(r.min_abs == doctest::Approx(b.value).epsilon(1e-12));
    // |sin| is even in (k, m), so either sign of the pair may be reported.
    CHECK(std::llabs(r.argmin.first) == std::llabs(b.k));
    CHECK(std::llabs(r.argmin.second) == std::llabs(b.m));
  }
  SUBCASE("k e pi + m") {
    IntRange box{-30, 30};
    auto r = sine_scan({ScanKind::SinKePiPlusM}, box, box);
    auto b = brute_sine(*epi, *one, box, box);
    CHECK(r.complete());
    CHECK(r.min_abs == doctest::Approx(b.value).epsilon(1e-12));
  }
  SUBCASE("k pi^2 + m pi^3") {
    Mp p2, p3;
    mpfr_sqr(*p2, *pi, MPFR_RNDN);
    mpfr_mul(*p3, *p2, *pi, MPFR_RNDN);
    IntRange box{-20, 20};
    auto r = sine_scan({ScanKind::SinKPiRPlusMPiS, 1, 2}, box, box);
    auto b = brute_sine(*p2, *p3, box, box);
    CHECK(r.complete());
    CHECK(r.min_lower_bound > 0);
    CHECK(r.min_abs == doctest::Approx(b.value).epsilon(1e-12));
  }
}

TEST_CASE("scan boxes must hold a nontrivial cell") {
  CHECK_THROWS_AS(sine_scan({ScanKind::SinKePlusM}, {0, 0}, {0, 0}), InvalidArgument);
  CHECK_THROWS_AS(sine_scan({ScanKind::SinKePlusM}, {3, 1}, {0, 0}), InvalidArgument);
  CHECK_THROWS_AS(lattice_gap({ScanKind::GapIntPi}, {0, 0}, {0, 0}), InvalidArgument);
  CHECK_THROWS_AS(lattice_gap({ScanKind::SinKePlusM}, {1, 1}, {1, 1}), InvalidArgument);
}

TEST_CASE("an exact zero is reported as unresolved") {
  // pi - 1 * pi vanishes, so no precision separates it from 0.
  ScanOptions opts;
  opts.max_precision = 256;
  auto r = lattice_gap({ScanKind::GapPiPowIntPi, 1, 2}, {1, 1}, {0, 0}, opts);
  CHECK_FALSE(r.complete());
  REQUIRE(r.unresolved.size() == 1);
  CHECK(r.unresolved[0] == std::make_pair(1LL, 0LL));
  CHECK(r.precision_used == 256);
}

TEST_CASE("lattice gaps") {
  SUBCASE("e - pi/2") {
    auto r = lattice_gap({ScanKind::GapHalfOddPi}, {1, 1}, {0, 0});
    const long double expect =
        std::numbers::e_v<long double> - std::numbers::pi_v<long double> / 2;
    CHECK(r.min_abs == doctest::Approx(static_cast<double>(expect)).epsilon(1e-15));
    CHECK(r.min_abs == doctest::Approx(1.147).epsilon(1e-3));
    CHECK(r.argmin_line == 0);
  }
  SUBCASE("closed-form nearest line equals a scan over r in [-1000, 1000]") {
    ScanOptions opts;
    opts.keep_cells = true;
    auto r = lattice_gap({ScanKind::GapIntPi}, {1, 10}, {-31, 31}, opts);
    CHECK(r.complete());
    CHECK(r.min_lower_bound > 0);
    Mp e, pi, t, u;
    set_e(*e);
    mpfr_const_pi(*pi, MPFR_RNDN);
    BruteMin best;
    for (const ScanCell& cell : r.cell_values) {
      long long best_r = 0;
      double best_v = 1e300;
      for (long long line = -1000; line <= 1000; ++line) {
        mpfr_mul_si(*t, *e, cell.k, MPFR_RNDN);
        mpfr_add_si(*t, *t, cell.m, MPFR_RNDN);
        mpfr_mul_si(*u, *pi, line, MPFR_RNDN);
        mpfr_sub(*t, *t, *u, MPFR_RNDN);
        const double v = std::fabs(t.d());
        if (v < best_v) best_v = v, best_r = line;
      }
      CHECK(cell.line == best_r);
      CHECK(std::fabs(cell.value) == doctest::Approx(best_v).epsilon(1e-12));
      if (best_v < best.value) best = {best_v, cell.k, cell.m, best_r};
    }
    CHECK(r.min_abs == doctest::Approx(best.value).epsilon(1e-12));
    CHECK(r.argmin == std::make_pair(best.k, best.m));
    CHECK(r.argmin_line == best.line);
  }
  SUBCASE("half-odd lines") {
    ScanOptions opts;
    opts.keep_cells = true;
    auto r = lattice_gap({ScanKind::GapHalfOddPi}, {-5, 5}, {-5, 5}, opts);
    const double pi = std::numbers::pi;
    for (const ScanCell& cell : r.cell_values) {
      const double v = cell.k * std::numbers::e + cell.m;
      double best_v = 1e300;
      long long best_r = 0;
      for (long long line = -1000; line <= 1000; ++line) {
        const double d = std::fabs(v - (2 * line + 1) * pi / 2);
        if (d < best_v) best_v = d, best_r = line;
      }
      CHECK(cell.line == best_r);
    }
  }
  SUBCASE("restricted line range") {
    ScanOptions opts;
    opts.line_range = IntRange{5, 6};
    auto r = lattice_gap({ScanKind::GapIntPi}, {1, 1}, {0, 0}, opts);
    CHECK(r.argmin_line == 5);
    CHECK(r.min_abs == doctest::Approx(5 * std::numbers::pi - std::numbers::e));
  }
}

TEST_CASE("integer multiples of e and pi") {
  auto one = integer_multiple_check(1, 1);
  CHECK(one.min_abs == doctest::Approx(std::numbers::pi - std::numbers::e).epsilon(1e-14));
  CHECK(std::floor(one.min_abs * 1e6) == 423310);

  auto r = integer_multiple_check(7, 6);
  double best = 1e300;
  std::pair<long long, long long> arg;
  for (long long k = 1; k <= 7; ++k) {
    for (long long m = 1; m <= 6; ++m) {
      const double v = std::fabs(k * std::numbers::e - m * std::numbers::pi);
      if (v < best) best = v, arg = {k, m};
    }
  }
  CHECK(r.argmin == arg);
  CHECK(r.min_abs == doctest::Approx(best).epsilon(1e-12));
  CHECK(static_cast<double>(r.argmin.first) / r.argmin.second ==
        doctest::Approx(std::numbers::pi / std::numbers::e).epsilon(0.05));

  auto big = integer_multiple_check(100, 100);
  CHECK(big.complete());
  CHECK(big.min_lower_bound > 0);
  CHECK(big.cells == 10000);
  CHECK_THROWS_AS(integer_multiple_check(0, 5), InvalidArgument);
}

TEST_CASE("sine product") {
  SUBCASE("e with a million factors") {
    Real e = eval_constant(ConstantId::e(), 128);
    SineProduct sp = sine_product(e, 1'000'000);
    REQUIRE(sp.enclosure.has_value());
    Real direct = sin(e);
    CHECK(sp.enclosure->contains(direct));
    CHECK(std::floor(sp.partial.mid_double() * 1e6) == 410781);
  }
  SUBCASE("pi hits the first factor") {
    Real pi = eval_constant(ConstantId::pi(), 128);
    SineProduct sp = sine_product(pi, 7);
    CHECK(sp.partial.contains_zero());
    CHECK(std::fabs(sp.partial.mid_double()) < 1e-30);
  }
  SUBCASE("1 with a thousand factors lies above sin 1") {
    Real one = Real::from_integer(1, 128);
    SineProduct sp = sine_product(one, 1000);
    Real direct = sin(one);
    REQUIRE(sp.enclosure.has_value());
    CHECK(sp.enclosure->contains(direct));
    CHECK((sp.partial - direct).certified_sign() > 0);
    CHECK(sp.tail_bound->mid_double() < 1e-4);
  }
  SUBCASE("brackets sin for assorted arguments") {
    for (const char* expr : {"1/3", "-2", "e*pi", "7.5", "pi^2"}) {
      Real x = eval_constant(ConstantId::parse(expr), 128);
      SineProduct sp = sine_product(x, 2000);
      CAPTURE(expr);
      REQUIRE(sp.enclosure.has_value());
      CHECK(sp.enclosure->contains(sin(x)));
    }
  }
  SUBCASE("no tail bound before the factors turn positive") {
    SineProduct sp = sine_product(Real::from_integer(100, 128), 10);
    CHECK_FALSE(sp.tail_bound.has_value());
    CHECK_FALSE(sp.enclosure.has_value());
  }
  CHECK_THROWS_AS(sine_product(Real::from_integer(1, 64), 0), InvalidArgument);
}

TEST_CASE("first_hit matches brute force") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const long mod = std::uniform_int_distribution<long>(1, 300)(rng);
    const long a = std::uniform_int_distribution<long>(0, 3 * mod)(rng);
    long lo = std::uniform_int_distribution<long>(0, mod - 1)(rng);
    long hi = std::uniform_int_distribution<long>(lo, std::min(mod - 1, lo + 20))(rng);
    std::optional<long> expect;
    for (long x = 0; x < mod; ++x) {
      const long v = (a * x) % mod;
      if (lo <= v && v <= hi) {
        expect = x;
        break;
      }
    }
    auto got = first_hit(a, mod, lo, hi);
    CAPTURE(a);
    CAPTURE(mod);
    CAPTURE(lo);
    CAPTURE(hi);
    REQUIRE(got.has_value() == expect.has_value());
    if (got) CHECK(*got == *expect);
  }
  mpz_class big = mpz_class(1) << 128;
  mpz_class a("0xb7e151628aed2a6abf7158809cf4f3c7");
  auto x = first_hit(a, big, big - 5, big - 1);
  REQUIRE(x.has_value());
  mpz_class v = (a * *x) % big;
  CHECK(v >= big - 5);
  for (long y = 1; y < 1000; ++y) CHECK((a * y) % big < big - 5);
}

namespace {

struct BruteKronecker {
  bool found = false;
  std::uint64_t q = 0;
};

// Minimal q in [1, cap] with |alpha q - p - beta| < eps, evaluated with MPFR.
BruteKronecker brute_kronecker(mpfr_srcptr alpha, mpfr_srcptr beta, double eps,
                               std::uint64_t cap) {
  Mp t(256);
  for (std::uint64_t q = 1; q <= cap; ++q) {
    mpfr_mul_ui(*t, alpha, q, MPFR_RNDN);
    mpfr_sub(*t, *t, beta, MPFR_RNDN);
    Mp r(256);
    mpfr_round(*r, *t);
    mpfr_sub(*t, *t, *r, MPFR_RNDN);
    if (std::fabs(t.d()) < eps) return {true, q};
  }
  return {};
}

}  // namespace

TEST_CASE("kronecker examples") {
  Real e = eval_constant(ConstantId::e(), 256);
  Mp me;
  set_e(*me);

  SUBCASE("beta = 0 lands on a convergent denominator of e") {
    KroneckerSolution s = kronecker_solve(e, Real::from_integer(0, 256), 1e-3, 100000);
    REQUIRE(s.found);
    auto cs = convergents(expand(e, 20), 20);
    bool is_convergent = false;
    for (const auto& c : cs) is_convergent |= (c.q == to_mpz(s.q) && c.p == s.p);
    CHECK(is_convergent);
    CHECK(s.achieved.mid_double() < 1e-3);
    Mp zero;
    mpfr_set_ui(*zero, 0, MPFR_RNDN);
    CHECK(brute_kronecker(*me, *zero, 1e-3, 100000).q == s.q);
  }
  SUBCASE("beta = pi/2 against brute force up to 1e5") {
    Real beta = eval_constant(ConstantId::parse("pi/2"), 256);
    KroneckerSolution s = kronecker_solve(e, beta, 1e-2, 100000);
    REQUIRE(s.found);
    Mp b;
    mpfr_const_pi(*b, MPFR_RNDN);
    mpfr_div_ui(*b, *b, 2, MPFR_RNDN);
    BruteKronecker ref = brute_kronecker(*me, *b, 1e-2, 100000);
    REQUIRE(ref.found);
    CHECK(s.q == ref.q);
    CHECK(s.q == 37);
    CHECK(s.p == 99);
    CHECK(std::fabs(37 * std::numbers::e - 99 - std::numbers::pi / 2) ==
          doctest::Approx(s.achieved.mid_double()).epsilon(1e-12));
  }
  SUBCASE("loose tolerance") {
    KroneckerSolution s = kronecker_solve(e, Real::from_integer(0, 256), 1.5, 10);
    CHECK(s.found);
    CHECK(s.q == 1);
    CHECK(s.p == 3);
  }
  SUBCASE("not found reports the closest approach") {
    KroneckerSolution s = kronecker_solve(e, Real::from_integer(0, 256), 1e-12, 1000);
    CHECK_FALSE(s.found);
    CHECK(s.q == 536);
    CHECK(s.p == 1457);
  }
  CHECK_THROWS_AS(kronecker_solve(Real::from_integer(2, 64), Real(), 0.1, 10),
                  InvalidArgument);
  CHECK_THROWS_AS(kronecker_solve(e, Real(), 0.0, 10), InvalidArgument);
  CHECK_THROWS_AS(kronecker_solve(e, Real(), 0.1, 0), InvalidArgument);
}

TEST_CASE("kronecker fast path equals the brute-force minimum") {
  std::mt19937_64 rng(1234);
  Mp me;
  set_e(*me);
  Real e = eval_constant(ConstantId::e(), 256);
  for (int trial = 0; trial < 100; ++trial) {
    const double beta_d = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const double eps = std::pow(10.0, std::uniform_real_distribution<double>(-4.0, -1.0)(rng));
    Real beta = Real::from_double(beta_d, 256);
    Mp b;
    mpfr_set_d(*b, beta_d, MPFR_RNDN);
    KroneckerSolution s = kronecker_solve(e, beta, eps, 10000);
    BruteKronecker ref = brute_kronecker(*me, *b, eps, 10000);
    CAPTURE(beta_d);
    CAPTURE(eps);
    CHECK(s.found == ref.found);
    if (ref.found) CHECK(s.q == ref.q);
  }
}

TEST_CASE("scan report json") {
  auto r = sine_scan({ScanKind::SinKePlusM}, {-2, 2}, {-3, 3});
  Json j = to_json(r);
  CHECK(j["family"] == "sin-ke+m");
  CHECK(j["box"]["k"] == Json::array({-2, 2}));
  CHECK(j["box"]["m"] == Json::array({-3, 3}));
  CHECK(j.contains("min_abs"));
  CHECK(j.contains("argmin"));
  CHECK(j["precision_used"] == 128);
}
