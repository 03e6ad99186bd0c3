#include "dioph/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace dioph {

std::string fixed(double value, int digits) {
  return fmt::format("{:.{}f}", value, digits);
}

std::string shortest(double value) { return fmt::format("{}", value); }

Json to_json(const ContinuedFraction& cf) {
  Json a = Json::array();
  for (const auto& q : cf.quotients) a.push_back(q.get_str());
  Json out;
  if (!cf.source.empty()) out["constant"] = cf.source;
  out["a"] = std::move(a);
  out["certified_len"] = cf.certified_len();
  out["terminates"] = cf.terminates;
  out["exhausted_at"] =
      cf.exhausted_at ? Json(*cf.exhausted_at) : Json(nullptr);
  return out;
}

Json to_json(const Convergent& c) {
  return Json{{"n", c.n}, {"p", c.p.get_str()}, {"q", c.q.get_str()}};
}

Json to_json(const std::vector<Convergent>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

Json to_json(const MuTable& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json row;
    row["n"] = r.n;
    row["p"] = r.p.get_str();
    row["q"] = r.q.get_str();
    row["mu0"] = r.mu0 ? Json(r.mu0->mid_double()) : Json(nullptr);
    row["tag"] = std::string(to_string(r.tag));
    row["published_mu0"] =
        r.published_mu0 ? Json(*r.published_mu0) : Json(nullptr);
    rows.push_back(std::move(row));
  }
  Json out;
  out["constant"] = table.constant;
  out["precision_bits"] = table.precision_bits;
  out["rows"] = std::move(rows);
  out["exhausted_at_row"] =
      table.exhausted_at_row ? Json(*table.exhausted_at_row) : Json(nullptr);
  return out;
}

Json to_json(const Classification& result) {
  Json curves = Json::array();
  for (const auto& c : result.curves) {
    Json samples = Json::array();
    for (const auto& s : c.samples) {
      samples.push_back(Json{{"x", s.x}, {"modulus", s.modulus}});
    }
    curves.push_back(Json{
        {"m", c.m},
        {"bound_constant",
         c.bound_constant ? Json(*c.bound_constant) : Json(nullptr)},
        {"samples", std::move(samples)}});
  }
  Json out;
  out["verdict"] = std::string(to_string(result.verdict));
  out["m_max"] = result.config.m_max;
  out["x_max"] = result.config.x_max;
  out["saturating_m"] =
      result.saturating_m ? Json(*result.saturating_m) : Json(nullptr);
  out["curves"] = std::move(curves);
  return out;
}

Json to_json(const LatticeScanReport& report) {
  Json unresolved = Json::array();
  for (const auto& [k, m] : report.unresolved) {
    unresolved.push_back(Json::array({k, m}));
  }
  Json out;
  out["family"] = report.family.name();
  out["box"] = Json{{"k", Json::array({report.k_range.lo, report.k_range.hi})},
                    {"m", Json::array({report.m_range.lo, report.m_range.hi})}};
  out["cells"] = report.cells;
  out["min_abs"] = report.min_abs;
  out["min_lower_bound"] = report.min_lower_bound;
  out["argmin"] = Json::array({report.argmin.first, report.argmin.second});
  if (report.argmin_line) out["argmin_line"] = *report.argmin_line;
  out["precision_used"] = report.precision_used;
  out["unresolved"] = std::move(unresolved);
  return out;
}

Json to_json(const KroneckerSolution& s) {
  Json out;
  out["found"] = s.found;
  out["q"] = s.q;
  out["p"] = s.p.get_str();
  out["achieved"] = s.achieved.mid_double();
  out["epsilon"] = s.epsilon;
  out["q_cap"] = s.q_cap;
  return out;
}

std::string cf_text(const ContinuedFraction& cf) {
  std::string out = cf.source.empty() ? "" : cf.source + " = ";
  out += "[";
  for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
    if (i == 1) out += "; ";
    if (i > 1) out += ", ";
    out += cf.quotients[i].get_str();
  }
  out += "]\n";
  out += fmt::format("certified terms: {}\n", cf.certified_len());
  if (cf.terminates) out += "expansion terminates\n";
  if (cf.exhausted_at) {
    out += fmt::format("precision exhausted at term {}\n", *cf.exhausted_at);
  }
  return out;
}

std::string convergents_csv(const ContinuedFraction& cf,
                            const std::vector<Convergent>& cs) {
  std::string out = "n,a,p,q\n";
  for (const auto& c : cs) {
    out += fmt::format("{},{},{},{}\n", c.n, cf.quotients[c.n].get_str(),
                       c.p.get_str(), c.q.get_str());
  }
  return out;
}

std::string mu_table_csv(const MuTable& table) {
  std::string out = "n,p,q,mu0,tag\n";
  for (const auto& r : table.rows) {
    out += fmt::format("{},{},{},{},{}\n", r.n, r.p.get_str(), r.q.get_str(),
                       r.mu0 ? fixed(r.mu0->mid_double(), 6) : "",
                       to_string(r.tag));
  }
  return out;
}

std::string mu_table_text(const MuTable& table) {
  std::size_t wp = 1, wq = 1;
  for (const auto& r : table.rows) {
    wp = std::max(wp, r.p.get_str().size());
    wq = std::max(wq, r.q.get_str().size());
  }
  std::string out = fmt::format("{} ({} bits)\n", table.constant,
                                table.precision_bits);
  out += fmt::format("{:>3}  {:>{}}  {:>{}}  {:>9}  {:>9}  {}\n", "n", "p", wp,
                     "q", wq, "mu0", "printed", "tag");
  for (const auto& r : table.rows) {
    out += fmt::format(
        "{:>3}  {:>{}}  {:>{}}  {:>9}  {:>9}  {}\n", r.n, r.p.get_str(), wp,
        r.q.get_str(), wq, r.mu0 ? fixed(r.mu0->mid_double(), 6) : "-",
        r.published_mu0 ? fixed(*r.published_mu0, 6) : "-", to_string(r.tag));
  }
  if (table.exhausted_at_row) {
    out += fmt::format("precision exhausted at row {}\n",
                       *table.exhausted_at_row);
  }
  return out;
}

std::string decay_curves_csv(const Classification& result, const Real& alpha) {
  std::string out = "x,m,modulus,bound\n";
  for (const auto& c : result.curves) {
    for (const auto& s : c.samples) {
      auto bound = decay_envelope(alpha, c.m, s.x);
      out += fmt::format("{},{},{},{}\n", s.x, c.m, shortest(s.modulus),
                         bound ? shortest(*bound) : "");
    }
  }
  return out;
}

std::string scan_cells_csv(const LatticeScanReport& report) {
  std::string out = "k,m,line,value,precision\n";
  for (const auto& c : report.cell_values) {
    out += fmt::format("{},{},{},{},{}\n", c.k, c.m,
                       c.line ? std::to_string(*c.line) : "",
                       shortest(c.value), c.precision);
  }
  return out;
}

}  // namespace dioph
