#ifndef DIOPH_CONTFRAC_HPP
#define DIOPH_CONTFRAC_HPP

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dioph/real.hpp"

namespace dioph {

// Certified simple continued fraction [a0; a1, a2, ...].
//
// Every stored quotient holds for all points of the source enclosure, so
// `quotients.size()` is the certified length.
struct ContinuedFraction {
  std::vector<mpz_class> quotients;
  // The source is an exact rational and the expansion is complete.
  bool terminates = false;
  // Index of the first quotient that could not be certified, if expansion
  // stopped before max_terms for lack of precision.
  std::optional<std::size_t> exhausted_at;
  std::string source;

  std::size_t certified_len() const { return quotients.size(); }
};

struct Convergent {
  std::size_t n = 0;
  mpz_class p;
  mpz_class q;
};

// Expands `x` into at most `max_terms` quotients. Exact rationals use the
// Euclidean algorithm; balls run the floor chain on both exact endpoints and
// stop at the first disagreement. Throws PrecisionExhausted(0) when not even
// a0 is certified and InvalidArgument for non-finite input.
ContinuedFraction expand(const Real& x, std::size_t max_terms,
                         std::string source = "");

// First `count` convergents. Throws InvalidArgument if count exceeds the
// certified length.
std::vector<Convergent> convergents(const ContinuedFraction& cf,
                                    std::size_t count);

// Value of [a0; a1, ..., a_{len-1}] folded from the last quotient upward.
mpq_class fold_quotients(const std::vector<mpz_class>& quotients,
                         std::size_t len);

struct SandwichReport {
  Real distance;                          // |x - p_n/q_n|
  std::optional<mpq_class> lower_bound;   // 1 / (2 q_{n+1} q_n)
  mpq_class upper_bound;                  // 1 / q_n^2
  bool lower_holds = false;
  bool upper_holds = false;
  bool terminating = false;  // x equals p_n/q_n exactly
};

// 1/(2 q_{n+1} q_n) <= |x - p_n/q_n| <= 1/q_n^2 for consecutive convergents.
// Pass std::nullopt for `next` at the last convergent of a finite expansion.
// Throws PrecisionExhausted when an inequality cannot be decided.
SandwichReport check_sandwich(const Real& x, const Convergent& c,
                              const std::optional<Convergent>& next);

// |x - p_n/q_n| < 1 / (a_{n+1} q_n^2).
bool quotient_bound_holds(const Real& x, const Convergent& c,
                          const mpz_class& next_quotient);

struct BestApproxReport {
  Convergent convergent;
  Real target;                 // |x q_n - p_n|
  std::uint64_t scanned_up_to = 0;
  bool complete = false;       // every q in [1, q_n] was scanned
  // Pairs certified to beat the convergent (must be empty for a convergent).
  std::vector<std::pair<mpz_class, std::uint64_t>> violations;
  // Pairs whose comparison could not be decided at the working precision.
  std::vector<std::pair<mpz_class, std::uint64_t>> unresolved;
  // Closest competitor seen: (p, q, |x q - p|).
  std::optional<std::pair<mpz_class, std::uint64_t>> runner_up;
  std::optional<Real> runner_up_value;
};

// Exhaustively scans q in [1, c.q] with the two nearest integers p and checks
// that no pair other than (p_n, q_n) gets |x q - p| strictly smaller. Stops
// with complete == false when `budget` elapses.
BestApproxReport best_approx_oracle(
    const Real& x, const Convergent& c,
    std::chrono::milliseconds budget = std::chrono::milliseconds::max());

}  // namespace dioph

#endif  // DIOPH_CONTFRAC_HPP
