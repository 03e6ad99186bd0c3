#ifndef DIOPH_LATTICE_HPP
#define DIOPH_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dioph/real.hpp"

namespace dioph {

enum class ScanKind {
  SinKePlusM,        // |sin(k e + m)|
  SinKePiPlusM,      // |sin(k e pi + m)|
  SinKPiRPlusMPiS,   // |sin(k pi^(r+1) + m pi^(s+1))|, 1 <= r < s
  GapHalfOddPi,      // min_r |k e + m - (2r+1) pi/2|
  GapIntPi,          // min_r |k e + m - r pi|
  GapPiPowIntPi,     // min_r |k pi^r + m pi^s - r' pi|, 1 <= r < s
  IntegerMultiple,   // |k e - m pi|, k, m >= 1
};

struct ScanFamily {
  ScanKind kind = ScanKind::SinKePlusM;
  unsigned r = 0;
  unsigned s = 0;

  // Throws InvalidArgument when the powers are out of range for the kind.
  void validate() const;
  std::string name() const;
  // Accepts the names produced by name(), e.g. "sin-kpi^2+mpi^3".
  static ScanFamily parse(const std::string& text);
};

struct IntRange {
  long long lo = 0;
  long long hi = 0;

  std::uint64_t size() const;
  bool contains(long long v) const { return lo <= v && v <= hi; }
};

struct ScanOptions {
  mpfr_prec_t start_precision = 128;
  mpfr_prec_t max_precision = 4096;  // precision doubles up to this cap
  bool keep_cells = false;
  // Restricts the lattice-line index of gap families; nearest line otherwise.
  std::optional<IntRange> line_range;
};

struct ScanCell {
  long long k = 0;
  long long m = 0;
  std::optional<long long> line;  // chosen r for gap families
  double value = 0;               // midpoint of the target expression
  mpfr_prec_t precision = 0;
};

// Result over a finite box; (0, 0) is always excluded.
struct LatticeScanReport {
  ScanFamily family;
  IntRange k_range;
  IntRange m_range;
  std::uint64_t cells = 0;
  double min_abs = 0;          // smallest midpoint |expression|
  double min_lower_bound = 0;  // certified lower bound over resolved cells
  std::pair<long long, long long> argmin{0, 0};
  std::optional<long long> argmin_line;
  mpfr_prec_t precision_used = 0;  // deepest precision any cell needed
  std::vector<std::pair<long long, long long>> unresolved;
  std::vector<ScanCell> cell_values;  // filled when keep_cells is set

  bool complete() const { return unresolved.empty(); }
};

// Certified minimum of the family's expression over the box. Cells whose
// enclosure still contains 0 at max_precision are listed as unresolved.
// Throws InvalidArgument for empty boxes or a box holding only (0, 0).
LatticeScanReport sine_scan(const ScanFamily& family, IntRange k_range,
                            IntRange m_range, const ScanOptions& options = {});

// Same engine restricted to the gap families.
LatticeScanReport lattice_gap(const ScanFamily& family, IntRange k_range,
                              IntRange m_range, const ScanOptions& options = {});

// min over 1 <= k <= k_max, 1 <= m <= m_max of |k e - m pi|.
LatticeScanReport integer_multiple_check(long long k_max, long long m_max,
                                         const ScanOptions& options = {});

struct SineProduct {
  Real partial;  // x * prod_{n<=N} (1 - x^2 / (pi^2 n^2))
  // Bound on |sin x - partial|; nullopt when N + 1 <= |x| / pi.
  std::optional<Real> tail_bound;
  // Ball holding sin(x): partial widened by the tail bound.
  std::optional<Real> enclosure;
  std::uint64_t terms = 0;
};

// Truncated Euler product. The remaining factors lie in [1 - S, 1] with
// S = x^2 / (pi^2 N), so sin x sits between partial*(1 - S) and partial.
SineProduct sine_product(const Real& x, std::uint64_t terms);

struct KroneckerSolution {
  bool found = false;
  std::uint64_t q = 0;
  mpz_class p;
  Real achieved;  // |alpha q - p - beta|
  double epsilon = 0;
  std::uint64_t q_cap = 0;
};

// Smallest q in [1, q_cap] with |alpha q - p - beta| < epsilon for some p.
// Candidates come from a Euclid-style first-hit search on a 128-bit
// fixed-point image of the rotation by alpha, each one confirmed in ball
// arithmetic. When none exists, found == false and (p, q) is the closest
// pair seen. Requires a non-exact alpha and epsilon > 0.
KroneckerSolution kronecker_solve(const Real& alpha, const Real& beta,
                                  double epsilon, std::uint64_t q_cap);

// Smallest x >= 0 with lo <= (a x mod modulus) <= hi, where
// 0 <= lo <= hi < modulus; nullopt when there is none.
std::optional<mpz_class> first_hit(const mpz_class& a, const mpz_class& modulus,
                                   const mpz_class& lo, const mpz_class& hi);

}  // namespace dioph

#endif  // DIOPH_LATTICE_HPP
