#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "eplab/solver/energy.hpp"
#include "eplab/solver/series.hpp"
#include "eplab/solver/split.hpp"
#include "eplab/solver/stepper.hpp"

namespace eplab {

/// Parameters of one simulation run.
struct RunConfig {
  std::size_t n = 32;
  double box_length = 64.0;
  PerturbationParams data;
  Scheme scheme = Scheme::exponential;
  double dt = 0.01;
  double t_end = 1.0;
  double record_every = 0.1;
  bool nonlinear = true;
  double sigma = 2.0;
  int order = 9;
  /// Quantities to record; empty selects `default_norms()`.
  std::vector<std::string> norms;
  /// Keep the profile b(t) at every sample time.
  bool keep_profiles = false;
  bool enforce_horizon = true;

  static std::vector<std::string> default_norms() {
    return {"rho_linf", "u_linf", "alpha_hn", "beta_besov", "beta_weighted", "beta_hn", "charge"};
  }
  static std::vector<std::string> all_norms() {
    return {"rho_linf", "u_linf", "alpha_hn", "beta_besov", "beta_weighted", "beta_hn", "energy",
            "energy_ratio", "zprime", "charge", "curl", "dtb_high", "dtb_low"};
  }
};

/// Time after which periodic images reach the data: (L - diameter) / 2.
inline double wraparound_horizon(double box_length, const PerturbationParams& p) {
  return 0.5 * (box_length - data_diameter(p));
}

struct ProfileSample {
  double time;
  SpectralField b;
};

struct RunResult {
  DecaySeries series;
  AlphaState initial;
  AlphaState final_state;
  BetaSplit split;
  Charge charge;
  std::vector<ProfileSample> profiles;
};

/// Steps that land exactly on multiples of `every` with a step no larger than dt.
inline std::size_t substeps(double every, double dt) {
  if (!(dt > 0.0) || !(every > 0.0)) throw InvalidArgument("time step and sampling interval must be positive");
  return static_cast<std::size_t>(std::ceil(every / dt - 1e-9));
}

namespace detail {

inline double vector_linf(const std::array<SpectralField, 3>& u) {
  std::array<SpectralField, 3> p{u[0].physical(), u[1].physical(), u[2].physical()};
  double m = 0.0;
  for (std::size_t i = 0; i < p[0].size(); ++i) {
    m = std::max(m, std::sqrt(std::norm(p[0][i]) + std::norm(p[1][i]) + std::norm(p[2][i])));
  }
  return m;
}

}  // namespace detail

/// Records every requested quantity of one state into `series`.
inline void record_state(const EulerPoissonModel& model, const AlphaState& a, const BetaSplit& split,
                         const RunConfig& cfg, const std::vector<std::string>& names, DecaySeries& series) {
  const double t = a.time;
  const std::set<std::string> want(names.begin(), names.end());
  auto on = [&](const char* k) { return want.count(k) != 0; };
  FluidState s = model.from_alpha(a);
  if (on("rho_linf")) series.add(t, "rho_linf", lebesgue_norm(s.n, kInf));
  if (on("u_linf")) series.add(t, "u_linf", detail::vector_linf(s.u));
  const double ahn = sobolev_h_norm(a.alpha, cfg.order);
  if (on("alpha_hn")) series.add(t, "alpha_hn", ahn);
  if (on("beta_besov") || on("beta_weighted") || on("beta_hn")) {
    const SpectralField beta = beta_of(a, split);
    const double bb = besov_norm(beta, {cfg.sigma, 10.0, 2.0});
    if (on("beta_besov")) series.add(t, "beta_besov", bb);
    if (on("beta_weighted")) series.add(t, "beta_weighted", std::pow(1.0 + t, 1.2) * bb);
    if (on("beta_hn")) series.add(t, "beta_hn", sobolev_h_norm(beta, cfg.order));
  }
  if (on("energy") || on("energy_ratio")) {
    const double e = energy_en(s, cfg.order);
    if (on("energy")) series.add(t, "energy", e);
    if (on("energy_ratio")) series.add(t, "energy_ratio", ahn > 0.0 ? e / (ahn * ahn) : 0.0);
  }
  if (on("zprime")) series.add(t, "zprime", zprime_bound(a));
  if (on("charge")) series.add(t, "charge", a.mean_n * a.grid().volume());
  if (on("curl")) series.add(t, "curl", curl_norm(s));
  if (on("dtb_high") || on("dtb_low")) {
    // e^{it<D>} d_t b = N(alpha(t)), and e^{it<D>} is unitary on every H^s.
    const SpectralField nl = cfg.nonlinear ? model.quadratic(a.alpha, a.mean_n) : SpectralField(a.grid(), Representation::frequency);
    if (on("dtb_high")) series.add(t, "dtb_high", sobolev_h_norm(nl, cfg.sigma + 3.0));
    if (on("dtb_low")) series.add(t, "dtb_low", sobolev_h_norm(nl, cfg.sigma - 1.0));
  }
}

inline void validate(const RunConfig& cfg) {
  Grid3 g(cfg.n, cfg.box_length);
  if (!(cfg.t_end >= 0.0)) throw InvalidArgument("solver.t_end must be non-negative");
  if (!(cfg.dt > 0.0)) throw InvalidArgument("solver.dt must be positive");
  if (!(cfg.record_every > 0.0)) throw InvalidArgument("record.every must be positive");
  if (cfg.order < 0 || cfg.order > 12) throw InvalidArgument("order N must lie in [0, 12]");
  if (cfg.enforce_horizon && cfg.t_end > wraparound_horizon(cfg.box_length, cfg.data) + 1e-12) {
    throw HorizonExceeded("solver.t_end exceeds the wrap-around horizon (L - data diameter)/2");
  }
  for (const auto& name : cfg.norms) {
    const auto all = RunConfig::all_norms();
    if (std::find(all.begin(), all.end(), name) == all.end()) throw InvalidArgument("unknown recorded quantity '" + name + "'");
  }
}

/// Evolves the alpha formulation from the configured data, sampling at
/// multiples of `record_every` up to `t_end`.
inline RunResult run_experiment(const RunConfig& cfg) {
  validate(cfg);
  const Grid3 g(cfg.n, cfg.box_length);
  const FluidState s0 = init_perturbation(g, cfg.data);
  const EulerPoissonModel model(g);
  AlphaState a = model.to_alpha(s0);
  const Charge charge = compute_charge(s0);
  const BetaSplit split = BetaSplit::from_initial(a, charge);
  const std::vector<std::string> names = cfg.norms.empty() ? RunConfig::default_norms() : cfg.norms;

  RunResult out{DecaySeries{}, a, a, split, charge, {}};
  auto& meta = out.series.metadata();
  meta["grid"] = std::to_string(cfg.n) + "^3 L=" + DecaySeries::format_number(cfg.box_length);
  meta["family"] = cfg.data.family == DataFamily::gaussian ? "gaussian" : cfg.data.family == DataFamily::bump ? "bump" : "dipole";
  meta["delta"] = DecaySeries::format_number(cfg.data.delta);
  meta["Q"] = DecaySeries::format_number(charge.q);
  meta["Q_tilde"] = DecaySeries::format_number(charge.q_tilde);

  AlphaStepper stepper(model, cfg.scheme, cfg.nonlinear);
  const std::size_t per = substeps(cfg.record_every, cfg.dt);
  const double h = cfg.record_every / static_cast<double>(per);
  const auto samples = static_cast<std::size_t>(std::floor(cfg.t_end / cfg.record_every + 1e-9));
  auto sample = [&](const AlphaState& st) {
    record_state(model, st, split, cfg, names, out.series);
    if (cfg.keep_profiles) out.profiles.push_back({st.time, profile_of(beta_of(st, split), st.time)});
  };
  sample(a);
  for (std::size_t k = 1; k <= samples; ++k) {
    for (std::size_t j = 0; j < per; ++j) stepper.step(a, h);
    a.time = static_cast<double>(k) * cfg.record_every;
    sample(a);
  }
  out.final_state = a;
  return out;
}

/// Fluid-variable run with classical RK4, used as the twin of the alpha run.
inline FluidState simulate_fluid(const FluidState& s0, double dt, double t_end) {
  const EulerPoissonModel model(s0.grid());
  FluidStepper stepper(model);
  FluidState s = s0;
  const std::size_t steps = substeps(t_end, dt);
  const double h = t_end / static_cast<double>(steps);
  s.n.to_frequency();
  for (auto& c : s.u) c.to_frequency();
  for (std::size_t k = 0; k < steps; ++k) stepper.step(s, h);
  s.time = s0.time + t_end;
  return s;
}

inline AlphaState simulate_alpha(const AlphaState& a0, Scheme scheme, double dt, double t_end, bool nonlinear = true) {
  const EulerPoissonModel model(a0.grid());
  AlphaStepper stepper(model, scheme, nonlinear);
  AlphaState a = a0;
  const std::size_t steps = substeps(t_end, dt);
  const double h = t_end / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) stepper.step(a, h);
  a.time = a0.time + t_end;
  return a;
}

}  // namespace eplab
