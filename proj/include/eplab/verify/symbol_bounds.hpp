#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "eplab/verify/phase_bound.hpp"

namespace eplab {

struct SymbolScanOptions {
  int max_order = 4;
  double log2_min = -4.0;
  double log2_max = 6.0;
  double log2_step = 1.0;
  std::size_t angles = 13;
  /// Sample points keep |xi1|, |xi2|, |xi1+xi2| >= margin * max magnitude and
  /// relative angles inside [margin, pi - margin]. Only triads with
  /// min(|xi|, |eta|)/2 <= |xi - eta| are sampled (the reduced configuration
  /// in which the bound is stated).
  double margin = 1e-2;
  /// Finite-difference step relative to the local scale L (theta + <L>^{-1}).
  double step = 1e-2;
  bool oriented_angle = false;
  double threshold = 1e4;
};

namespace detail {

// Second-order central difference weights for derivative orders 0..4 on offsets -2..2.
inline const std::array<std::array<double, 5>, 5>& central_weights() {
  static const std::array<std::array<double, 5>, 5> w{{
      {0.0, 0.0, 1.0, 0.0, 0.0},
      {0.0, -0.5, 0.0, 0.5, 0.0},
      {0.0, 1.0, -2.0, 1.0, 0.0},
      {-0.5, 1.0, 0.0, -1.0, 0.5},
      {1.0, -4.0, 6.0, -4.0, 1.0},
  }};
  return w;
}

}  // namespace detail

/// The normal-form kernel in output/right variables: F(xi, eta) = (m / phi_eps)(xi - eta, eta).
inline double nf_kernel(const BilinearSymbolSpec& spec, const Vec3& xi, const Vec3& eta) {
  return eval_symbol(spec, xi - eta, eta);
}

struct FdEstimate {
  double value;
  /// Rounding-error level of the estimate.
  double noise;
};

/// Central-difference estimate of d^{a}_{xi_i} d^{b}_{eta_j} F with steps hx (in xi) and he (in eta).
inline FdEstimate nf_kernel_fd(const BilinearSymbolSpec& spec, const Vec3& xi, const Vec3& eta, int i, int a, int j,
                               int b, double hx, double he) {
  const auto& w = detail::central_weights();
  double acc = 0.0, wsum = 0.0, fmax = 0.0;
  for (int p = -2; p <= 2; ++p) {
    const double wp = w[a][p + 2];
    if (wp == 0.0) continue;
    for (int q = -2; q <= 2; ++q) {
      const double wq = w[b][q + 2];
      if (wq == 0.0) continue;
      Vec3 x = xi, e = eta;
      x[i] += p * hx;
      e[j] += q * he;
      const double f = nf_kernel(spec, x, e);
      acc += wp * wq * f;
      wsum += std::abs(wp * wq);
      fmax = std::max(fmax, std::abs(f));
    }
  }
  const double scale = std::pow(hx, a) * std::pow(he, b);
  return {acc / scale, 4.0 * std::numeric_limits<double>::epsilon() * fmax * wsum / scale};
}

inline double nf_kernel_derivative(const BilinearSymbolSpec& spec, const Vec3& xi, const Vec3& eta, int i, int a, int j,
                                   int b, double h) {
  return nf_kernel_fd(spec, xi, eta, i, a, j, b, h, h).value;
}

/// Right side of the kernel bound for |alpha| = a, |beta| = b:
/// H L^{-1} [theta + L^{-1}]^{-(a+b+2)} |xi|^{-a} |eta|^{-b} when L >= 1, H |xi|^{-a} |eta|^{-b} otherwise.
inline double kernel_bound_rhs(const Vec3& xi, const Vec3& eta, int a, int b, bool oriented = false) {
  const Vec3 x1 = xi - eta;
  const double l = std::min({norm(x1), norm(eta), norm(xi)});
  const double hmax = std::max({norm(x1), norm(eta), norm(xi)});
  const double decay = std::pow(norm(xi), -a) * std::pow(norm(eta), -b);
  if (l <= 1.0) return hmax * decay;
  const double theta = detail::triad_angle(xi, eta, !oriented);
  return hmax / l * std::pow(theta + 1.0 / l, -(a + b + 2)) * decay;
}

struct SymbolSample {
  double a, b, psi;
  int axis_xi, order_xi, axis_eta, order_eta;
};

/// Ratio |d^alpha_xi d^beta_eta (m/phi)| / bound at one sample.
///
/// Steps are step * |xi| s and step * |eta| s with s = min(1, theta + L^{-1}),
/// the variation scales of the bound. Step pairs (4h, 2h), (2h, h), ... down to
/// h/32 are compared from coarse to fine; the first pair agreeing to 10% (plus
/// 1e-2 of the bound) above the rounding floor is taken. If no pair agrees the
/// estimate is declared unstable.
inline double symbol_bound_ratio(const BilinearSymbolSpec& spec, const SymbolSample& s,
                                 const SymbolScanOptions& opt = {}) {
  const Vec3 x1{s.a, 0.0, 0.0};
  const Vec3 eta{s.b * std::cos(s.psi), s.b * std::sin(s.psi), 0.0};
  const Vec3 xi = x1 + eta;
  const double l = std::min({norm(x1), norm(eta), norm(xi)});
  const double theta = detail::triad_angle(xi, eta, !opt.oriented_angle);
  const double shrink = std::min(1.0, theta + 1.0 / l);
  const double hx = opt.step * norm(xi) * shrink;
  const double he = opt.step * norm(eta) * shrink;
  const double rhs = kernel_bound_rhs(xi, eta, s.order_xi, s.order_eta, opt.oriented_angle);
  auto fd = [&](double f) {
    return nf_kernel_fd(spec, xi, eta, s.axis_xi, s.order_xi, s.axis_eta, s.order_eta, f * hx, f * he);
  };
  if (s.order_xi + s.order_eta == 0) return std::abs(fd(1.0).value) / rhs;
  FdEstimate coarse = fd(4.0);
  for (double f = 2.0; f >= 1.0 / 32.0; f *= 0.5) {
    const FdEstimate fine = fd(f);
    const double big = std::max(std::abs(coarse.value), std::abs(fine.value));
    const double tol = 0.1 * big + 1e-2 * rhs;
    if (std::abs(coarse.value - fine.value) <= tol && 2.0 * fine.noise <= tol) return std::abs(fine.value) / rhs;
    coarse = fine;
  }
  throw NumericalInstability("symbol derivative scan: step halving changes the estimate by more than 10%");
}

/// Empirical constant of the kernel bound for m/phi_eps over derivative orders
/// |alpha| + |beta| <= max_order along coordinate axes.
inline ScanReport scan_symbol_derivative_bounds(SymbolKind kind, const ConjPair& eps, const SymbolScanOptions& opt = {}) {
  const auto spec = BilinearSymbolSpec::normal_form(kind, eps);
  ScanReport rep("symbol derivative bound " + spec.label(), ScanReport::Rule::max_at_most, opt.threshold);
  const auto ladder = dyadic_ladder(opt.log2_min, opt.log2_max, opt.log2_step);
  for (double a : ladder) {
    for (double b : ladder) {
      for (std::size_t k = 0; k < opt.angles; ++k) {
        const double psi = opt.margin + (std::numbers::pi - 2.0 * opt.margin) * static_cast<double>(k) /
                                            static_cast<double>(opt.angles - 1);
        const Vec3 x1{a, 0.0, 0.0};
        const Vec3 x2{b * std::cos(psi), b * std::sin(psi), 0.0};
        const double nxi = norm(x1 + x2);
        if (nxi < opt.margin * std::max(a, b)) continue;
        if (a < 0.5 * std::min(nxi, b)) continue;
        for (int oa = 0; oa <= opt.max_order; ++oa) {
          for (int ob = 0; oa + ob <= opt.max_order; ++ob) {
            for (int i = 0; i < (oa > 0 ? 3 : 1); ++i) {
              for (int j = 0; j < (ob > 0 ? 3 : 1); ++j) {
                const SymbolSample s{a, b, psi, i, oa, j, ob};
                rep.observe(symbol_bound_ratio(spec, s, opt),
                            {a, b, psi, double(i), double(oa), double(j), double(ob)});
              }
            }
          }
        }
      }
    }
  }
  return rep.finalize();
}

}  // namespace eplab
