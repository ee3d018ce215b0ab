#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eplab/cli/experiment_config.hpp"
#include "eplab/linprop/decay.hpp"
#include "eplab/spectral/snapshot.hpp"
#include "eplab/verify/phase_bound.hpp"

namespace eplab::cli {

/// Exit codes of one subcommand invocation.
enum ExitCode : int { kPass = 0, kError = 1, kViolation = 2 };

/// A CSV table: one header row then records.
struct Table {
  std::string header;
  std::vector<std::string> rows;
};

/// Everything a subcommand emits.
struct Outcome {
  std::vector<ScanReport> reports;
  std::vector<std::pair<std::string, DecaySeries>> series;
  std::vector<std::pair<std::string, Table>> tables;
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<std::pair<std::string, ProfileSample>> snapshots;

  bool pass() const {
    return std::all_of(reports.begin(), reports.end(), [](const ScanReport& r) { return r.pass; });
  }
};

/// (subcommand, config hash, seed): the provenance of every emitted number.
struct Provenance {
  std::string subcommand;
  std::string config_hash;
  std::uint64_t seed = 1;

  std::string line() const {
    return "# subcommand=" + subcommand + " config_hash=" + config_hash + " seed=" + std::to_string(seed);
  }
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"simulate", "lindecay", "bdchi",    "phasebound", "symbolbound",
                                              "holder",   "lhbound",  "prodform", "nfcheck",    "controlds",
                                              "scatter",  "bootstrap", "report"};
  return names;
}

namespace detail {

inline std::string num(double v) { return DecaySeries::format_number(v); }

inline std::string coords(const std::vector<double>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + num(p[i]);
  return s;
}

inline ScanReport single(const std::string& name, ScanReport::Rule rule, double threshold, double value) {
  ScanReport r(name, rule, threshold);
  r.observe(value, {});
  return r.finalize();
}

inline RunConfig with_norms(RunConfig r, std::initializer_list<const char*> extra) {
  if (r.norms.empty()) r.norms = RunConfig::default_norms();
  for (const char* n : extra) {
    if (std::find(r.norms.begin(), r.norms.end(), n) == r.norms.end()) r.norms.emplace_back(n);
  }
  return r;
}

inline PseudoScanOptions seeded(PseudoScanOptions o, std::uint64_t seed) {
  o.seed = seed;
  return o;
}

inline Outcome simulate(const ExperimentConfig& cfg) {
  const RunResult run = run_experiment(cfg.run);
  Outcome out;
  ScanReport finite("simulate finite values", ScanReport::Rule::max_at_most, std::numeric_limits<double>::infinity());
  for (const auto& r : run.series.records()) finite.observe(r.value, {r.time});
  out.reports.push_back(finite.finalize());
  for (const auto& [k, v] : run.series.metadata()) out.notes.emplace_back(k, v);
  out.series.emplace_back("series", run.series);
  out.snapshots.emplace_back("final_alpha", ProfileSample{run.final_state.time, run.final_state.alpha});
  return out;
}

inline Outcome lindecay(const ExperimentConfig& cfg) {
  const auto& o = cfg.lindecay;
  const auto rep = linear_decay(RadialProfile::gaussian(o.width), log_spaced(o.t_min, o.t_max, o.samples), o.p,
                                {o.t_min, o.t_max});
  Outcome out;
  out.reports.push_back(single("lindecay slope deviation", ScanReport::Rule::max_at_most, o.tolerance,
                               std::abs(rep.fit.slope - rep.predicted_slope)));
  out.reports.push_back(single("lindecay L2 drift", ScanReport::Rule::max_at_most, o.l2_tolerance, rep.l2_max_drift));
  out.notes.emplace_back("slope", num(rep.fit.slope));
  out.notes.emplace_back("slope_stderr", num(rep.fit.stderr_slope));
  out.notes.emplace_back("predicted_slope", num(rep.predicted_slope));
  out.series.emplace_back("series", rep.series);
  return out;
}

inline Outcome bdchi(const ExperimentConfig& cfg) {
  const auto& o = cfg.bdchi;
  const RadialProfile density = RadialProfile::gaussian(o.width);
  const double q = radial_charge_q(density);
  const auto rep = verify_bdchi(density.charged_low(), q, log_spaced(o.t_min, o.t_max, o.samples), o.p_plain,
                                o.p_gradient, cfg.run.order);
  Outcome out;
  ScanReport plain("bdchi plain", ScanReport::Rule::max_at_most, o.threshold);
  ScanReport grad("bdchi gradient", ScanReport::Rule::max_at_most, o.threshold);
  Table t{"t,p,form,norm,ratio", {}};
  for (const auto& r : rep.rows) {
    (r.gradient ? grad : plain).observe(r.ratio, {r.t, r.p});
    t.rows.push_back(num(r.t) + "," + num(r.p) + "," + (r.gradient ? "gradient" : "plain") + "," + num(r.norm) + "," +
                     num(r.ratio));
  }
  if (!o.p_plain.empty()) out.reports.push_back(plain.finalize());
  if (!o.p_gradient.empty()) out.reports.push_back(grad.finalize());
  out.notes.emplace_back("Q", num(q));
  out.notes.emplace_back("chiQ_HN", num(rep.hn_norm));
  out.tables.emplace_back("rows", t);
  return out;
}

inline Outcome phasebound(const ExperimentConfig& cfg) {
  Outcome out;
  for (const auto& e : ConjPair::all()) out.reports.push_back(scan_phase_lower_bound(e, cfg.phase));
  return out;
}

inline Outcome symbolbound(const ExperimentConfig& cfg) {
  Outcome out;
  for (auto k : cfg.symbol_kinds) {
    for (const auto& e : ConjPair::all()) out.reports.push_back(scan_symbol_derivative_bounds(k, e, cfg.symbol));
  }
  return out;
}

inline Outcome holder(const ExperimentConfig& cfg) {
  Outcome out;
  const auto opt = seeded(cfg.holder, cfg.seed);
  for (auto k : cfg.holder_kinds) {
    for (const auto& e : ConjPair::all()) {
      out.reports.push_back(check_holder_pseudo_product(BilinearSymbolSpec::normal_form(k, e), e, cfg.triads, opt));
    }
  }
  ScanReport red = check_holder_reduction(cfg.holder_reduction, opt);
  red.threshold = cfg.holder_reduction_threshold;
  out.reports.push_back(red.finalize());
  Table t{"index,triad", {}};
  for (std::size_t i = 0; i < cfg.triads.size(); ++i) t.rows.push_back(std::to_string(i) + ",\"" + cfg.triads[i].label() + "\"");
  out.tables.emplace_back("triads", t);
  return out;
}

inline Outcome lhbound(const ExperimentConfig& cfg) {
  Outcome out;
  const auto opt = seeded(cfg.lh, cfg.seed);
  for (auto k : cfg.lh_kinds) {
    for (const auto& e : ConjPair::all()) {
      out.reports.push_back(check_lh_bound(BilinearSymbolSpec::normal_form(k, e), e, cfg.lh_cases, opt));
    }
  }
  return out;
}

inline Outcome prodform(const ExperimentConfig& cfg) {
  Outcome out;
  out.reports.push_back(check_prodform(cfg.prod_gammas, seeded(cfg.prod, cfg.seed)));
  return out;
}

inline Outcome nfcheck(const ExperimentConfig& cfg) {
  const auto& o = cfg.nf;
  const auto m = BilinearSymbolSpec::of(o.kind);
  Outcome out;
  const double res = nf_residual(cfg.run, m, o.eps, o.c1, o.c2, o.t, o.quad_dt);
  out.reports.push_back(single("nf residual", ScanReport::Rule::max_at_most, o.threshold, res));
  const auto ord = nf_residual_order(cfg.run, m, o.eps, o.c1, o.c2, o.t, o.order_quad_dts);
  out.reports.push_back(single("nf residual order", ScanReport::Rule::min_at_least, o.min_order, ord.order));
  Table t{"quad_dt,residual", {num(o.quad_dt) + "," + num(res)}};
  for (std::size_t i = 0; i < ord.quad_dts.size(); ++i) t.rows.push_back(num(ord.quad_dts[i]) + "," + num(ord.residuals[i]));
  out.tables.emplace_back("residuals", t);
  out.notes.emplace_back("order", num(ord.order));
  return out;
}

inline Outcome controlds(const ExperimentConfig& cfg) {
  const RunResult run = run_experiment(with_norms(cfg.run, {"beta_weighted", "beta_hn", "dtb_high", "dtb_low"}));
  const auto rep = check_controlds(run.series, run.charge.q, cfg.checks.controlds_eps, cfg.checks.controlds_slack);
  Outcome out;
  out.reports = {rep.high, rep.low, rep.growth_high, rep.growth_low};
  out.series.emplace_back("series", rep.series);
  out.notes.emplace_back("Q", num(run.charge.q));
  return out;
}

inline Outcome scatter(const ExperimentConfig& cfg) {
  RunConfig rc = with_norms(cfg.run, {});
  rc.keep_profiles = true;
  const RunResult run = run_experiment(rc);
  const double sigma = cfg.run.sigma;
  Outcome out;
  DecaySeries s;
  for (auto [t, v] : scattering_differences(run.profiles, sigma)) s.add(t, "profile_difference", v);
  const FitResult fit = check_scattering(run.profiles, sigma, cfg.checks.scatter_window);
  out.reports.push_back(single("scattering exponent", ScanReport::Rule::max_at_most, cfg.checks.scatter_threshold, fit.slope));
  out.notes.emplace_back("slope", num(fit.slope));
  out.notes.emplace_back("slope_stderr", num(fit.stderr_slope));
  out.series.emplace_back("series", s);
  return out;
}

inline Outcome bootstrap(const ExperimentConfig& cfg) {
  const RunResult run = run_experiment(with_norms(cfg.run, {"beta_weighted", "beta_hn", "energy_ratio"}));
  const auto rep = monitor_bootstrap(run, cfg.run.sigma, cfg.run.order, cfg.checks.bootstrap_threshold);
  Outcome out;
  out.reports.push_back(rep.ratio);
  for (auto& r : check_run_bounds(run.series, cfg.checks.bounds)) out.reports.push_back(r);
  out.notes.emplace_back("Q", num(rep.q));
  out.notes.emplace_back("Y_norm_initial", num(rep.y_norm_initial));
  out.series.emplace_back("series", run.series);
  out.series.emplace_back("bootstrap", rep.series);
  return out;
}

}  // namespace detail

/// Runs one computing subcommand (everything except `report`).
inline Outcome run_subcommand(const std::string& name, const ExperimentConfig& cfg) {
  static const std::map<std::string, std::function<Outcome(const ExperimentConfig&)>> table{
      {"simulate", detail::simulate},   {"lindecay", detail::lindecay},       {"bdchi", detail::bdchi},
      {"phasebound", detail::phasebound}, {"symbolbound", detail::symbolbound}, {"holder", detail::holder},
      {"lhbound", detail::lhbound},     {"prodform", detail::prodform},       {"nfcheck", detail::nfcheck},
      {"controlds", detail::controlds}, {"scatter", detail::scatter},         {"bootstrap", detail::bootstrap}};
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown subcommand '" + name + "'");
  cfg.validate_for(name);
  return it->second(cfg);
}

inline void write_series_csv(std::ostream& os, const Provenance& p, const DecaySeries& s) {
  os << p.line() << '\n';
  s.write_csv(os);
}

inline void write_reports_csv(std::ostream& os, const Provenance& p, const std::vector<ScanReport>& reports) {
  os << p.line() << '\n' << "quantity,samples,min,max,argmin,argmax,rule,threshold,pass\n";
  for (const auto& r : reports) {
    os << '"' << r.quantity << "\"," << r.samples << ',' << detail::num(r.min) << ',' << detail::num(r.max) << ','
       << detail::coords(r.argmin) << ',' << detail::coords(r.argmax) << ','
       << (r.rule == ScanReport::Rule::min_at_least ? "min_at_least" : "max_at_most") << ',' << detail::num(r.threshold)
       << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

inline void write_table_csv(std::ostream& os, const Provenance& p, const Table& t) {
  os << p.line() << '\n' << t.header << '\n';
  for (const auto& r : t.rows) os << r << '\n';
}

/// Structured text block: provenance, notes, one PASS/FAIL line per report, result.
inline std::string summary_text(const Provenance& p, const Outcome& o) {
  std::ostringstream os;
  os << "subcommand = " << p.subcommand << "\nconfig_hash = " << p.config_hash << "\nseed = " << p.seed << '\n';
  for (const auto& [k, v] : o.notes) os << k << " = " << v << '\n';
  for (const auto& r : o.reports) os << (r.pass ? "PASS " : "FAIL ") << r.summary() << '\n';
  os << "result = " << (o.pass() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

/// Writes <dir>/<subcommand>_{reports,<series>,<table>}.csv, the summary and snapshots.
inline void write_outcome(const std::filesystem::path& dir, const Provenance& p, const Outcome& o) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream os(dir / (p.subcommand + "_" + name));
    if (!os) throw Error("cannot write '" + (dir / (p.subcommand + "_" + name)).string() + "'");
    return os;
  };
  {
    auto os = open("reports.csv");
    write_reports_csv(os, p, o.reports);
  }
  for (const auto& [name, s] : o.series) {
    auto os = open(name + ".csv");
    write_series_csv(os, p, s);
  }
  for (const auto& [name, t] : o.tables) {
    auto os = open(name + ".csv");
    write_table_csv(os, p, t);
  }
  for (const auto& [name, snap] : o.snapshots) {
    snapshot::save((dir / (p.subcommand + "_" + name + ".eplb")).string(), snap.b, snap.time);
  }
  auto os = open("summary.txt");
  os << summary_text(p, o);
  if (!os) throw Error("write failure in '" + dir.string() + "'");
}

struct AggregateRow {
  std::string source;
  std::string line;
  bool pass;
};

/// Collects the PASS/FAIL lines of every *_summary.txt under `dir`, in file-name order.
inline std::vector<AggregateRow> aggregate_reports(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("report: '" + dir.string() + "' is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > 12 && name.compare(name.size() - 12, 12, "_summary.txt") == 0) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<AggregateRow> rows;
  for (const auto& f : files) {
    std::ifstream is(f);
    std::string line;
    const std::string src = f.filename().string().substr(0, f.filename().string().size() - 12);
    while (std::getline(is, line)) {
      if (line.rfind("PASS ", 0) == 0) rows.push_back({src, line.substr(5), true});
      if (line.rfind("FAIL ", 0) == 0) rows.push_back({src, line.substr(5), false});
    }
  }
  return rows;
}

inline std::string format_aggregate(const std::vector<AggregateRow>& rows) {
  std::size_t w = 10;
  for (const auto& r : rows) w = std::max(w, r.source.size());
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : rows) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.source << std::string(w - r.source.size(), ' ') << "  " << r.line << '\n';
    passed += r.pass ? 1 : 0;
  }
  os << "total " << rows.size() << " passed " << passed << " failed " << rows.size() - passed << '\n';
  return os.str();
}

}  // namespace eplab::cli
