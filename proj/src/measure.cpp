#include "dioph/measure.hpp"

#include <array>
#include <cmath>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

// Values exactly as printed, including their defects; the tagging pass is
// what reports them.
constexpr std::array<PublishedRow, 10> kEPlusPiRows{{
    {1, 5, 1, std::nullopt},
    {2, 6, 1, std::nullopt},
    {3, 41, 7, 3.033470},
    {4, 93, 50, 3.153443},
    {5, 920, 157, 2.608509},
    {6, 19613, 3347, 2.124717},
    {7, 40146, 6851, 2.382347},
    {8, 59759, 10198, 2.073126},
    {9, 379087, 64692, 2.067776},
    {10, 538751, 91939, 2.066541},
}};

constexpr std::array<PublishedRow, 10> kETimesPiRows{{
    {1, 8, 1, std::nullopt},
    {2, 9, 1, std::nullopt},
    {3, 17, 2, 4.653474},
    {4, 94, 11, 3.153443},
    {5, 111, 13, 2.599126},
    {6, 427, 50, 2.104500},
    {7, 538, 63, 2.382347},
    {8, 2579, 302, 2.442400},
    {9, 31486, 3687, 2.150201},
    {10, 97037, 11363, 2.123550},
}};

constexpr std::array<PublishedRow, 10> kPiPlusPiSquaredRows{{
    {1, 13, 1, std::nullopt},
    {2, 1158, 89, 2.262270},
    {3, 3487, 268, 2.273061},
    {4, 15106, 1161, 2.193714},
    {5, 48805, 3751, 2.068191},
    {6, 63911, 4912, 2.130031},
    {7, 176627, 13575, 2.152449},
    {8, 593792, 45637, 2.031677},
    {9, 770419, 59212, 2.211219},
    {10, 7527563, 578545, 2.073701},
}};

bool same_pair(const PublishedRow& row, const mpz_class& p, const mpz_class& q) {
  return p == to_mpz(row.p) && q == to_mpz(row.q);
}

}  // namespace

std::string_view to_string(RowTag tag) {
  switch (tag) {
    case RowTag::MatchesPaper:
      return "matches-paper";
    case RowTag::PaperInconsistent:
      return "paper-inconsistent";
    case RowTag::PaperAbsent:
      return "paper-absent";
  }
  return "unknown";
}

std::span<const PublishedRow> published_rows(ConstantTag tag) {
  switch (tag) {
    case ConstantTag::EPlusPi:
      return kEPlusPiRows;
    case ConstantTag::ETimesPi:
      return kETimesPiRows;
    case ConstantTag::PiPlusPiSquared:
      return kPiPlusPiSquaredRows;
    default:
      return {};
  }
}

MuEstimate mu_estimate(const Real& x, const Convergent& c) {
  MuEstimate est;
  est.n = c.n + 1;
  est.p = c.p;
  est.q = c.q;
  if (c.q < 1) throw InvalidArgument("denominator must be positive");
  if (c.q == 1) return est;
  // The final convergent of an exact rational has no finite exponent.
  if (x.is_exact() && *x.exact() == mpq_class(c.p, c.q)) return est;

  const mpfr_prec_t prec = x.precision();
  Real distance = abs(x - Real::from_rational(mpq_class(c.p, c.q), prec));
  if (distance.contains_zero()) {
    throw PrecisionExhausted(est.n, "|x - p/q| is not separated from zero");
  }
  est.mu0 = -log(distance) / log(Real::from_integer(c.q, prec));
  return est;
}

void tag_rows(std::vector<MuEstimate>& rows,
              std::span<const PublishedRow> published) {
  auto computed_has = [&](const PublishedRow& row) {
    for (const MuEstimate& r : rows) {
      if (same_pair(row, r.p, r.q)) return true;
    }
    return false;
  };

  for (MuEstimate& row : rows) {
    row.tag = RowTag::PaperAbsent;
    row.published_mu0.reset();

    const PublishedRow* match = nullptr;
    for (const PublishedRow& pub : published) {
      if (same_pair(pub, row.p, row.q)) match = &pub;
    }
    if (match) {
      row.published_mu0 = match->mu0;
      const bool both_blank = !match->mu0 && !row.mu0;
      const bool agree =
          match->mu0 && row.mu0 &&
          std::fabs(row.mu0->mid_double() - *match->mu0) < kPublishedTolerance;
      row.tag = (both_blank || agree) ? RowTag::MatchesPaper
                                      : RowTag::PaperInconsistent;
      continue;
    }
    // The pair was never printed. If the printed row at this position is a
    // genuine later convergent, the table merely skipped this one; otherwise
    // the printed row is corrupt.
    for (const PublishedRow& pub : published) {
      if (pub.n != row.n) continue;
      row.published_mu0 = pub.mu0;
      row.tag = computed_has(pub) ? RowTag::PaperAbsent
                                  : RowTag::PaperInconsistent;
      if (row.tag == RowTag::PaperAbsent) row.published_mu0.reset();
    }
  }
}

MuTable mu_table(const ConstantId& id, std::size_t rows,
                 mpfr_prec_t precision_bits) {
  if (rows == 0) throw InvalidArgument("rows must be positive");
  MuTable table;
  table.constant = id.name();
  table.precision_bits = precision_bits;

  Real x = eval_constant(id, precision_bits);
  ContinuedFraction cf = expand(x, rows, id.name());
  std::vector<Convergent> convs = convergents(cf, cf.certified_len());
  for (const Convergent& c : convs) {
    try {
      table.rows.push_back(mu_estimate(x, c));
    } catch (const PrecisionExhausted&) {
      table.exhausted_at_row = c.n + 1;
      break;
    }
  }
  if (!table.exhausted_at_row && cf.certified_len() < rows) {
    table.exhausted_at_row = cf.certified_len() + 1;
  }
  // A terminating expansion has no further rows; that is not exhaustion.
  if (cf.terminates && table.rows.size() == cf.certified_len()) {
    table.exhausted_at_row.reset();
  }
  tag_rows(table.rows, published_rows(id.tag()));
  return table;
}

}  // namespace dioph
