#ifndef DIOPH_REPORT_HPP
#define DIOPH_REPORT_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "dioph/contfrac.hpp"
#include "dioph/lattice.hpp"
#include "dioph/limit_test.hpp"
#include "dioph/measure.hpp"

namespace dioph {

using Json = nlohmann::ordered_json;

// Integers are emitted as decimal strings so arbitrary sizes survive.
Json to_json(const ContinuedFraction& cf);
Json to_json(const Convergent& c);
Json to_json(const std::vector<Convergent>& cs);
Json to_json(const MuTable& table);
Json to_json(const Classification& result);
Json to_json(const LatticeScanReport& report);
Json to_json(const KroneckerSolution& solution);

// Renderings used by the command-line tool. Every CSV has a header row and
// ends with a newline.
std::string cf_text(const ContinuedFraction& cf);
std::string convergents_csv(const ContinuedFraction& cf,
                            const std::vector<Convergent>& cs);
std::string mu_table_csv(const MuTable& table);
std::string mu_table_text(const MuTable& table);
// Columns x,m,modulus,bound; bound is blank when the sine is not certified.
std::string decay_curves_csv(const Classification& result, const Real& alpha);
std::string scan_cells_csv(const LatticeScanReport& report);

// Fixed-point decimal with `digits` places, rounded to nearest.
std::string fixed(double value, int digits);
// Shortest round-trip representation.
std::string shortest(double value);

}  // namespace dioph

#endif  // DIOPH_REPORT_HPP
