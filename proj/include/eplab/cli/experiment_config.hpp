#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eplab/cli/config.hpp"
#include "eplab/solver/experiment.hpp"
#include "eplab/verify/nf_identity.hpp"
#include "eplab/verify/pseudo_bounds.hpp"
#include "eplab/verify/run_checks.hpp"
#include "eplab/verify/symbol_bounds.hpp"

namespace eplab::cli {

struct LinDecayOptions {
  double width = 1.0;
  double p = 10.0;
  double t_min = 10.0;
  double t_max = 200.0;
  std::size_t samples = 40;
  double tolerance = 0.05;
  double l2_tolerance = 1e-8;
};

struct BdChiOptions {
  double width = 1.0;
  double t_min = 1.0;
  double t_max = 200.0;
  std::size_t samples = 40;
  std::vector<double> p_plain{2.5};
  std::vector<double> p_gradient{10.0};
  double threshold = 10.0;
};

struct NfOptions {
  SymbolKind kind = SymbolKind::mt;
  ConjPair eps{};
  NfOperand c1 = NfOperand::b;
  NfOperand c2 = NfOperand::chi_q;
  double t = 5.0;
  double quad_dt = 1e-3;
  double threshold = 1e-6;
  std::vector<double> order_quad_dts{0.04, 0.02, 0.01};
  double min_order = 3.5;
};

struct RunCheckOptions {
  double controlds_eps = 0.005;
  FitWindow scatter_window{1.0, 20.0};
  double scatter_threshold = -0.3;
  double bootstrap_threshold = 50.0;
  double controlds_slack = 1.1;
  RunBoundOptions bounds;
};

/// Union of every module's settings, read from one ConfigFile.
struct ExperimentConfig {
  RunConfig run;
  std::string output_dir = "out";
  std::uint64_t seed = 1;

  LinDecayOptions lindecay;
  BdChiOptions bdchi;
  PhaseScanOptions phase;
  SymbolScanOptions symbol;
  std::vector<SymbolKind> symbol_kinds{SymbolKind::mp, SymbolKind::mt};

  std::vector<SymbolKind> holder_kinds{SymbolKind::mp, SymbolKind::mt};
  std::vector<TriadSpec> triads = default_triads();
  PseudoScanOptions holder{16, 2.0 * std::numbers::pi, 5, 1, 100.0};
  TriadSpec holder_reduction{1.0, 1.0, 1.0, 10.0, 2.5, 2.0};
  double holder_reduction_threshold = 1.05;

  std::vector<SymbolKind> lh_kinds{SymbolKind::mp, SymbolKind::mt};
  std::vector<LhCase> lh_cases{{0.5, 2.0, 0.0}, {4.0, 2.0, 5.0}, {4.0, 2.0, 0.0}, {2.0, 2.0, 2.5}};
  PseudoScanOptions lh{16, 2.0 * std::numbers::pi, 5, 1, 100.0};

  std::vector<double> prod_gammas{0.0, 1.0, 2.0, 3.0, 5.0};
  PseudoScanOptions prod{16, 2.0 * std::numbers::pi, 20, 1, 10.0};

  NfOptions nf;
  RunCheckOptions checks;

  static std::vector<TriadSpec> default_triads() {
    std::vector<TriadSpec> out;
    const double shells[][3] = {{4, 4, 2}, {2, 2, 2}, {1, 2, 1}, {2, 1, 2}, {4, 2, 4}, {1, 1, 1}};
    const double exps[][3] = {{10, 2.5, 2}, {4, 4, 2}, {2, 10, 5.0 / 3.0}};
    for (const auto& s : shells) {
      for (const auto& e : exps) out.push_back({s[0], s[1], s[2], e[0], e[1], e[2]});
    }
    return out;
  }

  /// Reads every known key; any key left over is rejected.
  static ExperimentConfig from(const ConfigFile& c) {
    ExperimentConfig x;
    RunConfig& r = x.run;
    r.n = static_cast<std::size_t>(positive_int(c, "grid.dims", static_cast<long long>(r.n)));
    r.box_length = c.get_double("grid.box_length", r.box_length);
    r.data.family = parse_family(c.get_string("data.family", "gaussian"));
    r.data.delta = c.get_double("data.delta", r.data.delta);
    r.data.width = c.get_double("data.width", r.data.width);
    r.data.neutral = c.get_bool("data.neutral", r.data.neutral);
    r.data.velocity_scale = c.get_double("data.velocity_scale", r.data.velocity_scale);
    r.scheme = eplab::parse_scheme(c.get_string("solver.scheme", "exponential"));
    r.dt = c.get_double("solver.dt", r.dt);
    r.t_end = c.get_double("solver.t_end", r.t_end);
    r.nonlinear = c.get_bool("solver.nonlinear", r.nonlinear);
    r.enforce_horizon = c.get_bool("solver.enforce_horizon", r.enforce_horizon);
    r.norms = c.get_list("record.norms", {});
    if (r.norms.size() == 1 && r.norms[0] == "all") r.norms = RunConfig::all_norms();
    r.record_every = c.get_double("record.every", r.record_every);
    r.sigma = c.get_double("record.sigma", r.sigma);
    r.order = static_cast<int>(c.get_int("record.order", r.order));
    r.keep_profiles = c.get_bool("record.profiles", r.keep_profiles);
    x.output_dir = c.get_string("output.dir", x.output_dir);
    x.seed = static_cast<std::uint64_t>(positive_int(c, "seed", 1, true));

    auto& ld = x.lindecay;
    ld.width = c.get_double("lindecay.width", ld.width);
    ld.p = c.get_double("lindecay.p", ld.p);
    ld.t_min = c.get_double("lindecay.t_min", ld.t_min);
    ld.t_max = c.get_double("lindecay.t_max", ld.t_max);
    ld.samples = static_cast<std::size_t>(positive_int(c, "lindecay.samples", static_cast<long long>(ld.samples)));
    ld.tolerance = c.get_double("lindecay.tolerance", ld.tolerance);
    ld.l2_tolerance = c.get_double("lindecay.l2_tolerance", ld.l2_tolerance);

    auto& bd = x.bdchi;
    bd.width = c.get_double("bdchi.width", bd.width);
    bd.t_min = c.get_double("bdchi.t_min", bd.t_min);
    bd.t_max = c.get_double("bdchi.t_max", bd.t_max);
    bd.samples = static_cast<std::size_t>(positive_int(c, "bdchi.samples", static_cast<long long>(bd.samples)));
    bd.p_plain = c.get_doubles("bdchi.p_plain", bd.p_plain);
    bd.p_gradient = c.get_doubles("bdchi.p_gradient", bd.p_gradient);
    bd.threshold = c.get_double("bdchi.threshold", bd.threshold);

    auto& ph = x.phase;
    ph.log2_min = c.get_double("phase.log2_min", ph.log2_min);
    ph.log2_max = c.get_double("phase.log2_max", ph.log2_max);
    ph.log2_step = c.get_double("phase.log2_step", ph.log2_step);
    ph.angles = static_cast<std::size_t>(positive_int(c, "phase.angles", static_cast<long long>(ph.angles)));
    ph.oriented_angle = c.get_bool("phase.oriented", ph.oriented_angle);
    ph.threshold = c.get_double("phase.threshold", ph.threshold);

    auto& sy = x.symbol;
    x.symbol_kinds = kinds(c, "symbol.kinds", x.symbol_kinds);
    sy.max_order = static_cast<int>(c.get_int("symbol.max_order", sy.max_order));
    sy.log2_min = c.get_double("symbol.log2_min", sy.log2_min);
    sy.log2_max = c.get_double("symbol.log2_max", sy.log2_max);
    sy.log2_step = c.get_double("symbol.log2_step", sy.log2_step);
    sy.angles = static_cast<std::size_t>(positive_int(c, "symbol.angles", static_cast<long long>(sy.angles)));
    sy.margin = c.get_double("symbol.margin", sy.margin);
    sy.step = c.get_double("symbol.step", sy.step);
    sy.oriented_angle = c.get_bool("symbol.oriented", sy.oriented_angle);
    sy.threshold = c.get_double("symbol.threshold", sy.threshold);

    x.holder_kinds = kinds(c, "holder.kinds", x.holder_kinds);
    read_scan(c, "holder", x.holder);
    if (c.has("holder.triads") || c.has("holder.exponents")) {
      const auto shells = tuples(c, "holder.triads", 3, {{4, 4, 2}});
      const auto exps = tuples(c, "holder.exponents", 3, {{10, 2.5, 2}});
      x.triads.clear();
      for (const auto& s : shells) {
        for (const auto& e : exps) x.triads.push_back({s[0], s[1], s[2], e[0], e[1], e[2]});
      }
    }
    if (c.has("holder.reduction_exponents")) {
      const auto e = tuples(c, "holder.reduction_exponents", 3, {});
      if (e.size() != 1) throw ConfigError("config key 'holder.reduction_exponents': expected one p:q:r triple");
      x.holder_reduction = {1.0, 1.0, 1.0, e[0][0], e[0][1], e[0][2]};
    }
    x.holder_reduction_threshold = c.get_double("holder.reduction_threshold", x.holder_reduction_threshold);

    x.lh_kinds = kinds(c, "lh.kinds", x.lh_kinds);
    read_scan(c, "lh", x.lh);
    if (c.has("lh.cases")) {
      x.lh_cases.clear();
      const double sigma = c.get_double("lh.sigma", 2.0);
      for (const auto& mt : tuples(c, "lh.cases", 2, {})) x.lh_cases.push_back({mt[0], sigma, mt[1]});
    } else {
      const double sigma = c.get_double("lh.sigma", 2.0);
      for (auto& lc : x.lh_cases) lc.sigma = sigma;
    }
    x.prod_gammas = c.get_doubles("prodform.gammas", x.prod_gammas);
    read_scan(c, "prodform", x.prod);

    auto& nf = x.nf;
    nf.kind = parse_symbol_kind(c.get_string("nf.kind", to_string(nf.kind)));
    nf.eps = parse_conj_pair(c.get_string("nf.eps", nf.eps.label()));
    nf.c1 = parse_nf_operand(c.get_string("nf.c1", "b"));
    nf.c2 = parse_nf_operand(c.get_string("nf.c2", "chi_q"));
    nf.t = c.get_double("nf.t", nf.t);
    nf.quad_dt = c.get_double("nf.quad_dt", nf.quad_dt);
    nf.threshold = c.get_double("nf.threshold", nf.threshold);
    nf.order_quad_dts = c.get_doubles("nf.order_quad_dts", nf.order_quad_dts);
    nf.min_order = c.get_double("nf.min_order", nf.min_order);

    auto& ck = x.checks;
    ck.controlds_eps = c.get_double("controlds.eps", ck.controlds_eps);
    ck.scatter_window.t_min = c.get_double("scatter.t_min", ck.scatter_window.t_min);
    ck.scatter_window.t_max = c.get_double("scatter.t_max", ck.scatter_window.t_max);
    ck.scatter_threshold = c.get_double("scatter.threshold", ck.scatter_threshold);
    ck.bootstrap_threshold = c.get_double("bootstrap.threshold", ck.bootstrap_threshold);
    ck.controlds_slack = c.get_double("controlds.slack", ck.controlds_slack);
    ck.bounds.weighted_growth = c.get_double("bootstrap.weighted_growth", ck.bounds.weighted_growth);
    ck.bounds.hn_growth = c.get_double("bootstrap.hn_growth", ck.bounds.hn_growth);
    ck.bounds.energy_min = c.get_double("bootstrap.energy_min", ck.bounds.energy_min);
    ck.bounds.energy_max = c.get_double("bootstrap.energy_max", ck.bounds.energy_max);

    const auto unused = c.unused_keys();
    if (!unused.empty()) throw ConfigError("unknown config key '" + unused.front() + "'");
    return x;
  }

  /// Checks the preconditions of the operation behind `subcommand`.
  void validate_for(const std::string& subcommand) const {
    if (run.data.delta < 0.0 || run.data.delta > PerturbationParams::kMaxDelta) {
      throw ConfigError("data.delta must lie in [0, 0.05]");
    }
    if (!(run.data.width > 0.0)) throw ConfigError("data.width must be positive");
    const bool runs = subcommand == "simulate" || subcommand == "controlds" || subcommand == "scatter" ||
                      subcommand == "bootstrap";
    if (runs) {
      try {
        validate(run);
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    }
    if (subcommand == "controlds" && !(checks.controlds_eps > 0.0 && checks.controlds_eps < 0.01)) {
      throw ConfigError("controlds.eps must lie in (0, 1/100)");
    }
    if (subcommand == "scatter" && !(checks.scatter_window.t_max > checks.scatter_window.t_min)) {
      throw ConfigError("scatter.t_max must exceed scatter.t_min");
    }
    if (subcommand == "lindecay") {
      if (!(lindecay.p >= 2.0)) throw ConfigError("lindecay.p must be >= 2");
      if (!(lindecay.t_min > 0.0 && lindecay.t_max > lindecay.t_min)) throw ConfigError("lindecay window must satisfy 0 < t_min < t_max");
    }
    if (subcommand == "bdchi") {
      if (!(bdchi.t_min > 0.0 && bdchi.t_max > bdchi.t_min)) throw ConfigError("bdchi window must satisfy 0 < t_min < t_max");
      for (double p : bdchi.p_plain) {
        if (!(p >= 2.0 && p < 3.0)) throw ConfigError("bdchi.p_plain entries must lie in [2, 3)");
      }
      for (double p : bdchi.p_gradient) {
        if (!(p >= 2.0 && std::isfinite(p))) throw ConfigError("bdchi.p_gradient entries must lie in [2, inf)");
      }
    }
    if (subcommand == "phasebound" && (phase.angles < 2 || !(phase.log2_step > 0.0))) {
      throw ConfigError("phase.angles must be >= 2 and phase.log2_step positive");
    }
    if (subcommand == "symbolbound") {
      if (symbol.angles < 2 || !(symbol.log2_step > 0.0)) throw ConfigError("symbol.angles must be >= 2 and symbol.log2_step positive");
      if (symbol.max_order < 0 || symbol.max_order > 4) throw ConfigError("symbol.max_order must lie in [0, 4]");
    }
    if (subcommand == "holder") {
      for (const auto& t : triads) {
        try {
          t.validate();
        } catch (const Error& e) {
          throw ConfigError(std::string(e.what()) + " for " + t.label());
        }
      }
    }
    if (subcommand == "lhbound") {
      for (const auto& lc : lh_cases) {
        try {
          lc.validate();
        } catch (const Error& e) {
          throw ConfigError(e.what());
        }
      }
    }
    if (subcommand == "prodform") {
      for (double g : prod_gammas) {
        if (!(g >= 0.0)) throw ConfigError("prodform.gammas entries must be >= 0");
      }
    }
    if (subcommand == "nfcheck") {
      if (!(nf.t > 0.0 && nf.quad_dt > 0.0)) throw ConfigError("nf.t and nf.quad_dt must be positive");
      if (nf.order_quad_dts.size() < 2) throw ConfigError("nf.order_quad_dts needs at least two entries");
      RunConfig r = run;
      r.t_end = nf.t;
      try {
        validate(r);
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    }
  }

 private:
  static long long positive_int(const ConfigFile& c, const std::string& key, long long def, bool allow_zero = false) {
    const long long v = c.get_int(key, def);
    if (v < (allow_zero ? 0 : 1)) throw ConfigError("config key '" + key + "' must be positive");
    return v;
  }

  static std::vector<SymbolKind> kinds(const ConfigFile& c, const std::string& key, const std::vector<SymbolKind>& def) {
    if (!c.has(key)) {
      c.get_string(key, "");
      return def;
    }
    std::vector<SymbolKind> out;
    for (const auto& s : c.get_list(key, {})) out.push_back(parse_symbol_kind(s));
    if (out.empty()) throw ConfigError("config key '" + key + "': empty symbol list");
    return out;
  }

  /// Comma-separated tuples "a:b:c".
  static std::vector<std::vector<double>> tuples(const ConfigFile& c, const std::string& key, std::size_t arity,
                                                 const std::vector<std::vector<double>>& def) {
    if (!c.has(key)) {
      c.get_string(key, "");
      return def;
    }
    std::vector<std::vector<double>> out;
    for (const auto& item : c.get_list(key, {})) {
      std::vector<double> t;
      std::stringstream ss(item);
      std::string part;
      while (std::getline(ss, part, ':')) t.push_back(ConfigFile::to_double(key, ConfigFile::trim(part)));
      if (t.size() != arity) throw ConfigError("config key '" + key + "': '" + item + "' needs " + std::to_string(arity) + " ':'-separated numbers");
      out.push_back(t);
    }
    return out;
  }

  static void read_scan(const ConfigFile& c, const std::string& prefix, PseudoScanOptions& o) {
    o.grid_n = static_cast<std::size_t>(positive_int(c, prefix + ".grid", static_cast<long long>(o.grid_n)));
    o.box_length = c.get_double(prefix + ".box_length", o.box_length);
    o.trials = static_cast<std::size_t>(positive_int(c, prefix + ".trials", static_cast<long long>(o.trials)));
    o.threshold = c.get_double(prefix + ".threshold", o.threshold);
  }
};

}  // namespace eplab::cli
