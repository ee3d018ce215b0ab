#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "eplab/solver/series.hpp"

namespace eplab {

struct FitWindow {
  double t_min = 10.0;
  double t_max = 200.0;
};

/// Least-squares line log(value) = intercept + slope log(1 + t).
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinFitSamples = 8;

inline FitResult fit_decay_exponent(const std::vector<std::pair<double, double>>& points, FitWindow window = {}) {
  std::vector<double> x, y;
  FitResult r;
  r.t_min = window.t_max;
  r.t_max = window.t_min;
  for (const auto& [t, v] : points) {
    if (t < window.t_min || t > window.t_max) continue;
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("fit_decay_exponent: non-positive value in the window");
    x.push_back(std::log1p(t));
    y.push_back(std::log(v));
    r.t_min = std::min(r.t_min, t);
    r.t_max = std::max(r.t_max, t);
  }
  const std::size_t n = x.size();
  if (n < kMinFitSamples) throw InvalidArgument("fit_decay_exponent: fewer than 8 samples in the window");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("fit_decay_exponent: window spans a single time");
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - r.intercept - r.slope * x[i];
    rss += e * e;
  }
  r.stderr_slope = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  r.samples = n;
  return r;
}

inline FitResult fit_decay_exponent(const DecaySeries& series, const std::string& name, FitWindow window = {}) {
  return fit_decay_exponent(series.get(name), window);
}

/// n times log-spaced over [t_min, t_max], both ends included.
inline std::vector<double> log_spaced(double t_min, double t_max, std::size_t n) {
  if (n < 2 || !(t_min > 0.0) || !(t_max > t_min)) throw InvalidArgument("log_spaced: need n >= 2 and 0 < t_min < t_max");
  std::vector<double> out(n);
  const double ratio = std::log(t_max / t_min);
  for (std::size_t i = 0; i < n; ++i) out[i] = t_min * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
  out.back() = t_max;
  return out;
}

}  // namespace eplab
