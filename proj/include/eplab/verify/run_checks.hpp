#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "eplab/linprop/fit.hpp"
#include "eplab/solver/experiment.hpp"
#include "eplab/verify/report.hpp"

namespace eplab {

namespace detail {

inline const std::vector<std::pair<double, double>>& require_series(const DecaySeries& s, const std::string& name) {
  if (!s.has(name)) throw InvalidArgument("run lacks the recorded quantity '" + name + "'");
  return s.get(name);
}

// a / b with 0 / 0 read as 0.
inline double safe_ratio(double a, double b) {
  if (b == 0.0) return a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return a / b;
}

/// sup over the second half of the window / sup over the first half (0 when
/// the second half vanishes).
inline double growth_ratio(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return 0.0;
  const double mid = 0.5 * (pts.front().first + pts.back().first);
  double first = 0.0, second = 0.0;
  for (auto [t, v] : pts) {
    double& half = t <= mid ? first : second;
    half = std::max(half, v);
  }
  return safe_ratio(second, first);
}

inline bool non_growing(const std::vector<std::pair<double, double>>& pts, double slack = 1.1) {
  return growth_ratio(pts) <= slack;
}

}  // namespace detail

/// Running sup of (1+t)^{6/5} ||beta||_{B^sigma_{10,2}} + ||beta||_{H^N} from a run's series.
inline std::vector<std::pair<double, double>> running_xt(const DecaySeries& s) {
  const auto& w = detail::require_series(s, "beta_weighted");
  const auto& h = detail::require_series(s, "beta_hn");
  if (w.size() != h.size()) throw InvalidArgument("beta_weighted and beta_hn are sampled differently");
  std::vector<std::pair<double, double>> out;
  double sup = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    sup = std::max(sup, w[i].second + h[i].second);
    out.emplace_back(w[i].first, sup);
  }
  return out;
}

struct ControlDsReport {
  ScanReport high;
  ScanReport low;
  /// Normalized series "controlds_high" and "controlds_low".
  DecaySeries series;
  /// Late-half sup over early-half sup of each normalized series.
  ScanReport growth_high;
  ScanReport growth_low;
  bool pass() const { return high.pass && low.pass && growth_high.pass && growth_low.pass; }
};

/// (1+t)^{9/10+eps} ||e^{it<D>} d_t b||_{H^{sigma+3}} / (Q + X_T)^2 and
/// (1+t)^{6/5} ||e^{it<D>} d_t b||_{H^{sigma-1}} / (Q + X_T)^2 along a run.
/// Pass: every value finite and the sup over the late half of the window
/// at most `slack` times the sup over the early half.
inline ControlDsReport check_controlds(const DecaySeries& s, double q, double eps = 0.005, double slack = 1.1) {
  if (!(eps > 0.0 && eps < 0.01)) throw InvalidArgument("controlds: eps must lie in (0, 1/100)");
  const auto& hi = detail::require_series(s, "dtb_high");
  const auto& lo = detail::require_series(s, "dtb_low");
  const auto xt = running_xt(s);
  if (hi.size() != xt.size() || lo.size() != xt.size()) throw InvalidArgument("controlds: series sampled differently");
  ControlDsReport rep{ScanReport("controlds high", ScanReport::Rule::max_at_most, std::numeric_limits<double>::infinity()),
                      ScanReport("controlds low", ScanReport::Rule::max_at_most, std::numeric_limits<double>::infinity()),
                      {},
                      ScanReport("controlds high growth", ScanReport::Rule::max_at_most, slack),
                      ScanReport("controlds low growth", ScanReport::Rule::max_at_most, slack)};
  for (std::size_t i = 0; i < xt.size(); ++i) {
    const double t = xt[i].first;
    const double scale = (q + xt[i].second) * (q + xt[i].second);
    const double vh = detail::safe_ratio(std::pow(1.0 + t, 0.9 + eps) * hi[i].second, scale);
    const double vl = detail::safe_ratio(std::pow(1.0 + t, 1.2) * lo[i].second, scale);
    rep.high.observe(vh, {t});
    rep.low.observe(vl, {t});
    rep.series.add(t, "controlds_high", vh);
    rep.series.add(t, "controlds_low", vl);
  }
  rep.high.finalize();
  rep.low.finalize();
  rep.growth_high.observe(detail::growth_ratio(rep.series.get("controlds_high")), {});
  rep.growth_low.observe(detail::growth_ratio(rep.series.get("controlds_low")), {});
  rep.growth_high.finalize();
  rep.growth_low.finalize();
  return rep;
}

/// ||b(2t) - b(t)||_{H^sigma} for every stored t > 0 whose double is also stored.
inline std::vector<std::pair<double, double>> scattering_differences(const std::vector<ProfileSample>& profiles,
                                                                     double sigma) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : profiles) {
    if (!(p.time > 0.0)) continue;
    const auto it = std::find_if(profiles.begin(), profiles.end(), [&](const ProfileSample& q) {
      return std::abs(q.time - 2.0 * p.time) <= 1e-9 * std::max(1.0, p.time);
    });
    if (it == profiles.end()) continue;
    out.emplace_back(p.time, sobolev_h_norm(it->b - p.b, sigma));
  }
  return out;
}

/// Decay exponent of ||b(2t) - b(t)||_{H^sigma} in (1+t) over `window`.
inline FitResult check_scattering(const std::vector<ProfileSample>& profiles, double sigma, FitWindow window) {
  const auto d = scattering_differences(profiles, sigma);
  std::size_t inside = 0;
  for (auto [t, v] : d) inside += (t >= window.t_min && t <= window.t_max) ? 1 : 0;
  if (inside < kMinFitSamples) throw InvalidArgument("scattering: window too short (fewer than 8 dyadic pairs)");
  return fit_decay_exponent(d, window);
}

struct BootstrapReport {
  ScanReport ratio;
  double y_norm_initial = 0.0;
  double q = 0.0;
  /// Series "x_t" (running sup) and "bootstrap_ratio".
  DecaySeries series;
};

/// X_T / (||beta(0)||_Y + (Q + X_T)^2) along a run, X_T the running sup of the
/// X-norm integrand. Pass: sup below `threshold`.
inline BootstrapReport monitor_bootstrap(const RunResult& run, double sigma, double big_n, double threshold = 50.0) {
  const SpectralField beta0 = beta_of(run.initial, run.split);
  BootstrapReport rep{ScanReport("bootstrap ratio", ScanReport::Rule::max_at_most, threshold),
                      y_norm(beta0, sigma, big_n), run.charge.q, {}};
  for (auto [t, x] : running_xt(run.series)) {
    const double den = rep.y_norm_initial + (rep.q + x) * (rep.q + x);
    const double r = detail::safe_ratio(x, den);
    rep.ratio.observe(r, {t});
    rep.series.add(t, "x_t", x);
    rep.series.add(t, "bootstrap_ratio", r);
  }
  rep.ratio.finalize();
  return rep;
}

struct RunBoundOptions {
  double weighted_growth = 10.0;
  double hn_growth = 2.0;
  double energy_min = 0.25;
  double energy_max = 4.0;
};

/// Smallness of a run: (1+t)^{6/5}||beta||_{B^sigma_{10,2}} and ||beta||_{H^N}
/// relative to their initial values, and the energy ratio E_N / ||alpha||^2_{H^N}
/// from both sides. Quantities the run did not record are skipped.
inline std::vector<ScanReport> check_run_bounds(const DecaySeries& s, const RunBoundOptions& opt = {}) {
  std::vector<ScanReport> out;
  auto growth = [&](const char* name, const char* label, double thr) {
    if (!s.has(name)) return;
    const auto& pts = s.get(name);
    ScanReport rep(label, ScanReport::Rule::max_at_most, thr);
    const double v0 = pts.front().second;
    for (auto [t, v] : pts) rep.observe(detail::safe_ratio(v, v0), {t});
    out.push_back(rep.finalize());
  };
  growth("beta_weighted", "weighted besov growth", opt.weighted_growth);
  growth("beta_hn", "beta H^N growth", opt.hn_growth);
  if (s.has("energy_ratio")) {
    ScanReport lo("energy ratio lower", ScanReport::Rule::min_at_least, opt.energy_min);
    ScanReport hi("energy ratio upper", ScanReport::Rule::max_at_most, opt.energy_max);
    for (auto [t, v] : s.get("energy_ratio")) {
      lo.observe(v, {t});
      hi.observe(v, {t});
    }
    out.push_back(lo.finalize());
    out.push_back(hi.finalize());
  }
  return out;
}

}  // namespace eplab
