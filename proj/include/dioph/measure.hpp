#ifndef DIOPH_MEASURE_HPP
#define DIOPH_MEASURE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dioph/constants.hpp"
#include "dioph/contfrac.hpp"
#include "dioph/real.hpp"

namespace dioph {

// Agreement threshold between a computed and a published mu0.
inline constexpr double kPublishedTolerance = 5e-5;

enum class RowTag { MatchesPaper, PaperInconsistent, PaperAbsent };

std::string_view to_string(RowTag tag);

// A row of a published irrationality-measure table: 1-based row number,
// printed numerator and denominator, printed mu0 (blank cells are nullopt).
// A printed denominator of 0 marks an unreadable cell.
struct PublishedRow {
  std::size_t n;
  long long p;
  long long q;
  std::optional<double> mu0;
};

// Reference rows for e+pi, e*pi and pi+pi^2; empty for other constants.
std::span<const PublishedRow> published_rows(ConstantTag tag);

struct MuEstimate {
  std::size_t n = 0;  // 1-based row number (convergent index + 1)
  mpz_class p;
  mpz_class q;
  std::optional<Real> mu0;  // undefined when q == 1
  RowTag tag = RowTag::PaperAbsent;
  std::optional<double> published_mu0;
};

// mu0 = log(1 / |x - p/q|) / log(q). Returns an undefined row for q == 1 and
// throws PrecisionExhausted(c.n + 1) when |x - p/q| is not separated from 0.
MuEstimate mu_estimate(const Real& x, const Convergent& c);

struct MuTable {
  std::string constant;
  mpfr_prec_t precision_bits = 0;
  std::vector<MuEstimate> rows;
  // Row number at which precision ran out, if the table is partial.
  std::optional<std::size_t> exhausted_at_row;
};

// One row per convergent, tagged against the published table for `id`.
MuTable mu_table(const ConstantId& id, std::size_t rows,
                 mpfr_prec_t precision_bits = 1024);

// Tags computed rows by matching (p, q) against `published`.
void tag_rows(std::vector<MuEstimate>& rows,
              std::span<const PublishedRow> published);

}  // namespace dioph

#endif  // DIOPH_MEASURE_HPP
