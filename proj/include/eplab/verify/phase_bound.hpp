#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "eplab/symbols/symbols.hpp"
#include "eplab/verify/report.hpp"

namespace eplab {

namespace detail {

/// Angle between xi and eta in [0, pi]; 0 when either vanishes. With
/// `unoriented` the angle between the lines, min(theta, pi - theta).
inline double triad_angle(const Vec3& xi, const Vec3& eta, bool unoriented) {
  const double nx = norm(xi), ne = norm(eta);
  if (nx == 0.0 || ne == 0.0) return 0.0;
  const double c = std::clamp(dot(xi, eta) / (nx * ne), -1.0, 1.0);
  const double th = std::acos(c);
  return unoriented ? std::min(th, std::numbers::pi - th) : th;
}

}  // namespace detail

struct PhaseScanOptions {
  double log2_min = -6.0;
  double log2_max = 8.0;
  /// Ladder step in powers of two.
  double log2_step = 0.5;
  std::size_t angles = 121;
  /// Literal angle between xi1 + xi2 and xi2 instead of the line angle.
  bool oriented_angle = false;
  double threshold = 0.05;
};

/// |phi_eps(xi1, xi2)| / (<L> [theta^2 + <L>^{-2}]) with xi = xi1 + xi2, eta = xi2,
/// theta = angle(xi, eta), L = min(|xi1|, |xi2|, |xi|).
inline double phase_bound_ratio(const ConjPair& eps, const Vec3& xi1, const Vec3& xi2, bool oriented = false) {
  const Vec3 xi = xi1 + xi2;
  const double theta = detail::triad_angle(xi, xi2, !oriented);
  const double l = std::min({norm(xi1), norm(xi2), norm(xi)});
  const double jl = jbracket(l);
  return std::abs(eval_phase(eps, xi1, xi2)) / (jl * (theta * theta + 1.0 / (jl * jl)));
}

/// Sample point (a, b, psi): xi1 = a e_x, xi2 = b (cos psi, sin psi, 0).
inline double phase_bound_ratio_at(const ConjPair& eps, double a, double b, double psi, bool oriented = false) {
  return phase_bound_ratio(eps, {a, 0.0, 0.0}, {b * std::cos(psi), b * std::sin(psi), 0.0}, oriented);
}

inline std::vector<double> dyadic_ladder(double log2_min, double log2_max, double step) {
  std::vector<double> out;
  const auto n = static_cast<int>(std::floor((log2_max - log2_min) / step + 1e-9));
  for (int i = 0; i <= n; ++i) out.push_back(std::exp2(log2_min + step * i));
  return out;
}

/// Empirical constant of |phi_eps| >~ <L>[theta^2 + <L>^{-2}] over magnitudes on
/// a dyadic ladder and relative angles in [0, pi].
inline ScanReport scan_phase_lower_bound(const ConjPair& eps, const PhaseScanOptions& opt = {}) {
  ScanReport rep("phase lower bound " + eps.label(), ScanReport::Rule::min_at_least, opt.threshold);
  const auto ladder = dyadic_ladder(opt.log2_min, opt.log2_max, opt.log2_step);
  for (double a : ladder) {
    for (double b : ladder) {
      for (std::size_t k = 0; k < opt.angles; ++k) {
        const double psi = std::numbers::pi * static_cast<double>(k) / static_cast<double>(opt.angles - 1);
        rep.observe(phase_bound_ratio_at(eps, a, b, psi, opt.oriented_angle), {a, b, psi});
      }
    }
  }
  return rep.finalize();
}

}  // namespace eplab
