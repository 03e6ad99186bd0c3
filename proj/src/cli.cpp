#include "dioph/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include "dioph/constants.hpp"
#include "dioph/contfrac.hpp"
#include "dioph/errors.hpp"
#include "dioph/lattice.hpp"
#include "dioph/limit_test.hpp"
#include "dioph/measure.hpp"
#include "dioph/report.hpp"

namespace dioph {

namespace {

constexpr mpfr_prec_t kDefaultPrecision = 256;
constexpr mpfr_prec_t kTablePrecision = 1024;

enum class Format { Text, Csv, Json };

struct RunConfig {
  long precision_bits = 0;
  CLI::Option* precision_opt = nullptr;
  Format format = Format::Text;
  std::string output_path;
  std::optional<long> time_budget_secs;
  CLI::Option* budget_opt = nullptr;

  mpfr_prec_t precision(mpfr_prec_t fallback) const {
    if (precision_opt->count() == 0) return fallback;
    if (precision_bits < 64) throw InvalidArgument("precision must be >= 64");
    return precision_bits;
  }
};

IntRange parse_range(const std::string& text) {
  const auto colon = text.find(':', 1);
  try {
    if (colon == std::string::npos) {
      long long v = std::stoll(text);
      return {v, v};
    }
    IntRange r{std::stoll(text.substr(0, colon)),
               std::stoll(text.substr(colon + 1))};
    if (r.hi < r.lo) throw InvalidArgument("empty range '" + text + "'");
    return r;
  } catch (const std::logic_error&) {
    throw ParseError("bad range '" + text + "', expected lo:hi");
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open '" + path + "' for writing");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Result {
  std::string text;
  int code = kExitOk;
};

// --- subcommand bodies -----------------------------------------------------

struct CfArgs {
  std::string constant;
  std::size_t terms = 20;
  bool with_convergents = false;
};

Result do_cf(const RunConfig& cfg, const CfArgs& a) {
  ConstantId id = ConstantId::parse(a.constant);
  Real x = eval_constant(id, cfg.precision(kDefaultPrecision));
  ContinuedFraction cf = expand(x, a.terms, a.constant);
  Result r;
  if (cf.exhausted_at) r.code = kExitPartial;
  std::vector<Convergent> cs = convergents(cf, cf.certified_len());
  switch (cfg.format) {
    case Format::Text:
      r.text = cf_text(cf);
      break;
    case Format::Csv:
      r.text = convergents_csv(cf, cs);
      break;
    case Format::Json: {
      Json j = to_json(cf);
      if (a.with_convergents) j["convergents"] = to_json(cs);
      r.text = dump(j);
      break;
    }
  }
  return r;
}

struct MuArgs {
  std::string constant;
  std::size_t rows = 10;
};

Result do_mu_table(const RunConfig& cfg, const MuArgs& a) {
  if (a.rows < 1) throw InvalidArgument("--rows must be at least 1");
  MuTable t = mu_table(ConstantId::parse(a.constant), a.rows,
                       cfg.precision(kTablePrecision));
  Result r;
  if (t.exhausted_at_row) r.code = kExitPartial;
  switch (cfg.format) {
    case Format::Text:
      r.text = mu_table_text(t);
      break;
    case Format::Csv:
      r.text = mu_table_csv(t);
      break;
    case Format::Json:
      r.text = dump(to_json(t));
      break;
  }
  return r;
}

struct LimitArgs {
  std::string constant;
  ClassifierConfig config;
  std::string curves_path;
};

Result do_limit_test(const RunConfig& cfg, const LimitArgs& a) {
  ConstantId id = ConstantId::parse(a.constant);
  Real alpha = eval_constant(id, cfg.precision(kDefaultPrecision));
  Classification c = classify(alpha, a.constant, a.config);
  if (!a.curves_path.empty()) {
    write_file(a.curves_path, decay_curves_csv(c, alpha));
  }
  Result r;
  switch (cfg.format) {
    case Format::Text:
      r.text = fmt::format("{}: {}\n", a.constant, to_string(c.verdict));
      if (c.saturating_m) {
        r.text += fmt::format("saturating m: {}\n", *c.saturating_m);
      }
      break;
    case Format::Csv:
      r.text = decay_curves_csv(c, alpha);
      break;
    case Format::Json: {
      Json j;
      j["constant"] = a.constant;
      const Json body = to_json(c);
      for (const auto& [key, value] : body.items()) j[key] = value;
      r.text = dump(j);
      break;
    }
  }
  return r;
}

struct ScanArgs {
  std::string family;
  std::string k = "-10:10";
  std::string m = "-10:10";
  std::string lines;
  std::string cells_path;
  long max_precision = 4096;
};

Result render_scan(const RunConfig& cfg, const LatticeScanReport& rep,
                   const std::string& cells_path) {
  if (!cells_path.empty()) write_file(cells_path, scan_cells_csv(rep));
  Result r;
  if (!rep.complete()) r.code = kExitUnresolved;
  switch (cfg.format) {
    case Format::Text:
      r.text = fmt::format(
          "{} k={}:{} m={}:{}\ncells: {}\nmin |value|: {}\n"
          "certified lower bound: {}\nargmin: ({}, {}){}\n"
          "precision used: {}\nunresolved: {}\n",
          rep.family.name(), rep.k_range.lo, rep.k_range.hi, rep.m_range.lo,
          rep.m_range.hi, rep.cells, shortest(rep.min_abs),
          shortest(rep.min_lower_bound), rep.argmin.first, rep.argmin.second,
          rep.argmin_line ? fmt::format(" line {}", *rep.argmin_line) : "",
          rep.precision_used, rep.unresolved.size());
      break;
    case Format::Csv:
      r.text = scan_cells_csv(rep);
      break;
    case Format::Json:
      r.text = dump(to_json(rep));
      break;
  }
  return r;
}

ScanOptions scan_options(const RunConfig& cfg, const ScanArgs& a) {
  ScanOptions opts;
  if (cfg.precision_opt->count() > 0) {
    opts.start_precision = cfg.precision(ScanOptions{}.start_precision);
  }
  opts.max_precision = a.max_precision;
  if (opts.max_precision < opts.start_precision) {
    throw InvalidArgument("--max-precision is below the starting precision");
  }
  opts.keep_cells = cfg.format == Format::Csv || !a.cells_path.empty();
  if (!a.lines.empty()) opts.line_range = parse_range(a.lines);
  return opts;
}

Result do_scan(const RunConfig& cfg, const ScanArgs& a, bool gap_only) {
  ScanFamily family = ScanFamily::parse(a.family);
  ScanOptions opts = scan_options(cfg, a);
  IntRange k = parse_range(a.k);
  IntRange m = parse_range(a.m);
  LatticeScanReport rep = gap_only ? lattice_gap(family, k, m, opts)
                                   : sine_scan(family, k, m, opts);
  return render_scan(cfg, rep, a.cells_path);
}

struct MultipleArgs {
  long long k_max = 100;
  long long m_max = 100;
  std::string cells_path;
};

Result do_multiple(const RunConfig& cfg, const MultipleArgs& a) {
  ScanArgs sa;
  sa.cells_path = a.cells_path;
  ScanOptions opts = scan_options(cfg, sa);
  return render_scan(cfg, integer_multiple_check(a.k_max, a.m_max, opts),
                     a.cells_path);
}

struct KroneckerArgs {
  std::string alpha = "e";
  std::string beta;
  double eps = 1e-2;
  std::uint64_t q_cap = 1'000'000;
};

Result do_kronecker(const RunConfig& cfg, const KroneckerArgs& a) {
  const mpfr_prec_t prec = cfg.precision(kDefaultPrecision);
  Real alpha = eval_constant(ConstantId::parse(a.alpha), prec);
  Real beta = eval_constant(ConstantId::parse(a.beta), prec);
  KroneckerSolution s = kronecker_solve(alpha, beta, a.eps, a.q_cap);
  Result r;
  if (!s.found) r.code = kExitPartial;
  switch (cfg.format) {
    case Format::Text:
      r.text = fmt::format("{}: q = {}, p = {}, |alpha q - p - beta| = {}\n",
                           s.found ? "found" : "not found within q_cap", s.q,
                           s.p.get_str(), shortest(s.achieved.mid_double()));
      break;
    case Format::Csv:
      r.text = fmt::format("found,q,p,achieved,epsilon\n{},{},{},{},{}\n",
                           s.found ? 1 : 0, s.q, s.p.get_str(),
                           shortest(s.achieved.mid_double()),
                           shortest(s.epsilon));
      break;
    case Format::Json: {
      Json j;
      j["alpha"] = a.alpha;
      j["beta"] = a.beta;
      const Json body = to_json(s);
      for (const auto& [key, value] : body.items()) j[key] = value;
      r.text = dump(j);
      break;
    }
  }
  return r;
}

struct KernelArgs {
  double t = 0;
  std::uint64_t x = 1;
  bool compare = false;
  double floor = kDefaultSingularFloor;
};

Result do_kernel(const RunConfig& cfg, const KernelArgs& a) {
  const double closed = kernel_closed_form(a.t, a.x, a.floor);
  Json j;
  j["t"] = a.t;
  j["x"] = a.x;
  j["closed_form"] = closed;
  j["bound"] = 1.0 / std::fabs(std::sin(a.t));
  std::optional<double> rel;
  std::complex<double> brute;
  if (a.compare) {
    brute = kernel_brute(a.t, a.x);
    const double scale = std::max(std::fabs(closed), std::abs(brute));
    rel = scale == 0 ? 0.0 : std::abs(brute - closed) / scale;
    j["brute"] = Json{{"re", brute.real()}, {"im", brute.imag()}};
    j["rel_diff"] = *rel;
  }
  Result r;
  switch (cfg.format) {
    case Format::Text:
      r.text = fmt::format("closed form: {}\nbound 1/|sin t|: {}\n",
                           shortest(closed), shortest(j["bound"].get<double>()));
      if (rel) {
        r.text += fmt::format("brute force: {} + {}i\nrelative diff: {}\n",
                              shortest(brute.real()), shortest(brute.imag()),
                              shortest(*rel));
      }
      break;
    case Format::Csv:
      r.text = fmt::format("t,x,closed_form,brute_re,brute_im,rel_diff\n"
                           "{},{},{},{},{},{}\n",
                           shortest(a.t), a.x, shortest(closed),
                           rel ? shortest(brute.real()) : "",
                           rel ? shortest(brute.imag()) : "",
                           rel ? shortest(*rel) : "");
      break;
    case Format::Json:
      r.text = dump(j);
      break;
  }
  return r;
}

struct DiscrepancyArgs {
  std::string constant;
  std::uint64_t n = 10'000;
};

Result do_discrepancy(const RunConfig& cfg, const DiscrepancyArgs& a) {
  Real alpha = eval_constant(ConstantId::parse(a.constant),
                             cfg.precision(kDefaultPrecision));
  const double d = discrepancy(alpha, a.n);
  Result r;
  switch (cfg.format) {
    case Format::Text:
      r.text = fmt::format("D*_{} = {}\n", a.n, shortest(d));
      break;
    case Format::Csv:
      r.text = fmt::format("n,discrepancy\n{},{}\n", a.n, shortest(d));
      break;
    case Format::Json:
      r.text = dump(Json{{"constant", a.constant}, {"n", a.n},
                         {"discrepancy", d}});
      break;
  }
  return r;
}

struct SineArgs {
  std::string x;
  std::uint64_t terms = 1000;
};

Result do_sine_product(const RunConfig& cfg, const SineArgs& a) {
  const mpfr_prec_t prec = cfg.precision(kDefaultPrecision);
  Real x = eval_constant(ConstantId::parse(a.x), prec);
  SineProduct sp = sine_product(x, a.terms);
  Real direct = sin(x);
  const bool brackets = sp.enclosure && sp.enclosure->contains(direct);
  Result r;
  auto bound = sp.tail_bound ? shortest(sp.tail_bound->mid_double()) : "";
  switch (cfg.format) {
    case Format::Text:
      r.text = fmt::format("partial: {}\ntail bound: {}\nsin x: {}\n"
                           "enclosure holds sin x: {}\n",
                           sp.partial.to_decimal(20),
                           bound.empty() ? "none" : bound,
                           direct.to_decimal(20), brackets ? "yes" : "no");
      break;
    case Format::Csv:
      r.text = fmt::format("terms,partial,tail_bound,sin\n{},{},{},{}\n",
                           sp.terms, sp.partial.to_decimal(20), bound,
                           direct.to_decimal(20));
      break;
    case Format::Json:
      r.text = dump(Json{{"x", a.x},
                         {"terms", sp.terms},
                         {"partial", sp.partial.to_decimal(20)},
                         {"tail_bound", bound.empty() ? Json(nullptr)
                                                      : Json(bound)},
                         {"sin", direct.to_decimal(20)},
                         {"brackets", brackets}});
      break;
  }
  return r;
}

struct BestArgs {
  std::string constant;
  std::uint64_t q_max = 10'000;
};

Result do_best_approx(const RunConfig& cfg, const BestArgs& a) {
  Real x = eval_constant(ConstantId::parse(a.constant),
                         cfg.precision(kDefaultPrecision));
  ContinuedFraction cf = expand(x, 64, a.constant);
  std::vector<Convergent> cs = convergents(cf, cf.certified_len());
  const auto start = std::chrono::steady_clock::now();
  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (cfg.budget_opt->count() > 0) {
    deadline = start + std::chrono::seconds(*cfg.time_budget_secs);
  }
  Result r;
  Json rows = Json::array();
  std::string text;
  std::string csv = "n,p,q,complete,violations,unresolved\n";
  for (const auto& c : cs) {
    if (c.q > a.q_max) break;
    auto budget = std::chrono::milliseconds::max();
    if (deadline) {
      budget = std::chrono::duration_cast<std::chrono::milliseconds>(
          *deadline - std::chrono::steady_clock::now());
      if (budget.count() <= 0) {
        r.code = kExitPartial;
        break;
      }
    }
    BestApproxReport rep = best_approx_oracle(x, c, budget);
    if (!rep.complete || !rep.unresolved.empty()) r.code = kExitPartial;
    rows.push_back(Json{{"n", c.n},
                        {"p", c.p.get_str()},
                        {"q", c.q.get_str()},
                        {"complete", rep.complete},
                        {"violations", rep.violations.size()},
                        {"unresolved", rep.unresolved.size()}});
    text += fmt::format("{:>3} {}/{}: {}\n", c.n, c.p.get_str(), c.q.get_str(),
                        !rep.complete             ? "incomplete"
                        : !rep.violations.empty() ? "beaten"
                        : !rep.unresolved.empty() ? "undecided"
                                                  : "best");
    csv += fmt::format("{},{},{},{},{},{}\n", c.n, c.p.get_str(),
                       c.q.get_str(), rep.complete ? 1 : 0,
                       rep.violations.size(), rep.unresolved.size());
  }
  switch (cfg.format) {
    case Format::Text:
      r.text = text;
      break;
    case Format::Csv:
      r.text = csv;
      break;
    case Format::Json:
      r.text = dump(Json{{"constant", a.constant}, {"rows", rows}});
      break;
  }
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Certified Diophantine approximation toolkit", "dioph"};
  app.set_config("--config", "", "key=value file mirroring the flags");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.precision_opt =
      app.add_option("--precision", cfg.precision_bits,
                     "Working precision in bits (default 256, tables 1024)")
          ->envname(kPrecisionEnv);
  const std::map<std::string, Format> formats{
      {"text", Format::Text}, {"csv", Format::Csv}, {"json", Format::Json}};
  app.add_option("--format", cfg.format, "text, csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->option_text("text|csv|json");
  app.add_option("--output,-o", cfg.output_path, "Write results to a file");
  long budget = 0;
  cfg.budget_opt = app.add_option("--time-budget", budget,
                                  "Seconds allowed for exhaustive searches");

  std::function<Result()> action;

  CfArgs cf;
  auto* cf_cmd = app.add_subcommand("cf", "Certified continued fraction");
  cf_cmd->add_option("constant", cf.constant)->required();
  cf_cmd->add_option("--terms", cf.terms, "Number of partial quotients");
  cf_cmd->add_flag("--convergents", cf.with_convergents,
                   "Include convergents in JSON output");
  cf_cmd->callback([&] { action = [&] { return do_cf(cfg, cf); }; });

  MuArgs mu;
  auto* mu_cmd = app.add_subcommand("mu-table", "Irrationality-measure table");
  mu_cmd->add_option("constant", mu.constant)->required();
  mu_cmd->add_option("--rows", mu.rows, "Number of convergent rows");
  mu_cmd->callback([&] { action = [&] { return do_mu_table(cfg, mu); }; });

  LimitArgs lt;
  auto* lt_cmd = app.add_subcommand("limit-test", "Rational/irrational test");
  lt_cmd->add_option("constant", lt.constant)->required();
  lt_cmd->add_option("--m-max", lt.config.m_max)->check(CLI::PositiveNumber);
  lt_cmd->add_option("--x-max", lt.config.x_max)->check(CLI::Range(1000, 1000000000));
  lt_cmd->add_option("--saturation", lt.config.saturation);
  lt_cmd->add_option("--decay-factor", lt.config.decay_factor);
  lt_cmd->add_option("--curves", lt.curves_path, "CSV file for decay curves");
  lt_cmd->callback([&] { action = [&] { return do_limit_test(cfg, lt); }; });

  ScanArgs sc;
  auto add_box = [&](CLI::App* cmd) {
    cmd->add_option("family", sc.family)->required();
    cmd->add_option("--k", sc.k, "k range lo:hi");
    cmd->add_option("--m", sc.m, "m range lo:hi");
    cmd->add_option("--max-precision", sc.max_precision);
    cmd->add_option("--cells", sc.cells_path, "CSV file for every cell");
  };
  auto* scan_cmd = app.add_subcommand("scan", "Sine nonvanishing scan");
  add_box(scan_cmd);
  scan_cmd->callback([&] { action = [&] { return do_scan(cfg, sc, false); }; });
  auto* gap_cmd = app.add_subcommand("gap", "Lattice gap to excluded lines");
  add_box(gap_cmd);
  gap_cmd->add_option("--lines", sc.lines, "Line index range lo:hi");
  gap_cmd->callback([&] { action = [&] { return do_scan(cfg, sc, true); }; });

  MultipleArgs mul;
  auto* mul_cmd = app.add_subcommand("multiple", "min |k e - m pi|");
  mul_cmd->add_option("--k-max", mul.k_max);
  mul_cmd->add_option("--m-max", mul.m_max);
  mul_cmd->add_option("--cells", mul.cells_path);
  mul_cmd->callback([&] { action = [&] { return do_multiple(cfg, mul); }; });

  KroneckerArgs kr;
  auto* kr_cmd = app.add_subcommand("kronecker", "Inhomogeneous approximation");
  kr_cmd->add_option("--alpha", kr.alpha);
  kr_cmd->add_option("--beta", kr.beta)->required();
  kr_cmd->add_option("--eps", kr.eps)->check(CLI::PositiveNumber);
  kr_cmd->add_option("--q-cap", kr.q_cap)->check(CLI::PositiveNumber);
  kr_cmd->callback([&] { action = [&] { return do_kronecker(cfg, kr); }; });

  KernelArgs ke;
  auto* ke_cmd = app.add_subcommand("kernel", "Dirichlet kernel");
  ke_cmd->add_option("--t", ke.t)->required();
  ke_cmd->add_option("--x", ke.x)->required()->check(CLI::PositiveNumber);
  ke_cmd->add_flag("--compare", ke.compare, "Also sum term by term");
  ke_cmd->add_option("--floor", ke.floor);
  ke_cmd->callback([&] { action = [&] { return do_kernel(cfg, ke); }; });

  DiscrepancyArgs di;
  auto* di_cmd = app.add_subcommand("discrepancy", "Star discrepancy");
  di_cmd->add_option("constant", di.constant)->required();
  di_cmd->add_option("--n", di.n)->check(CLI::PositiveNumber);
  di_cmd->callback([&] { action = [&] { return do_discrepancy(cfg, di); }; });

  SineArgs si;
  auto* si_cmd = app.add_subcommand("sine-product", "Truncated sine product");
  si_cmd->add_option("x", si.x)->required();
  si_cmd->add_option("--terms", si.terms)->check(CLI::PositiveNumber);
  si_cmd->callback([&] { action = [&] { return do_sine_product(cfg, si); }; });

  BestArgs ba;
  auto* ba_cmd = app.add_subcommand("best-approx", "Exhaustive best-approximation check");
  ba_cmd->add_option("constant", ba.constant)->required();
  ba_cmd->add_option("--q-max", ba.q_max);
  ba_cmd->callback([&] { action = [&] { return do_best_approx(cfg, ba); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (cfg.budget_opt->count() > 0) cfg.time_budget_secs = budget;

  try {
    Result r = action();
    if (cfg.output_path.empty()) {
      out << r.text;
    } else {
      write_file(cfg.output_path, r.text);
    }
    return r.code;
  } catch (const PrecisionExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExitPartial;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace dioph
