#pragma once

#include <cmath>
#include <vector>

#include "eplab/spectral/grid.hpp"

namespace eplab {

/// Smooth radial bump: 1 on |x| <= 1, 0 on |x| >= 2, monotone in between,
/// built from g(s) = exp(-1/s).
struct CutoffChi {
  static double g(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

  static double value(double r) {
    r = std::abs(r);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = g(2.0 - r);
    const double b = g(r - 1.0);
    return a / (a + b);
  }

  double operator()(double r) const { return value(r); }
  double operator()(const Vec3& x) const { return value(norm(x)); }
};

/// Littlewood-Paley frequency window.
///
///  - low(N):   chi(xi / N)                  the projector P_{<=N}
///  - high(N):  1 - chi(xi / (2N))           the projector P_{>=N}
///  - shell(N): chi(xi / (2N)) - chi(xi / N) the projector P_N, supported in N < |xi| < 4N
struct Band {
  enum class Kind { low, high, shell };
  Kind kind;
  double scale;

  static Band low(double n) { return {Kind::low, n}; }
  static Band high(double n) { return {Kind::high, n}; }
  static Band shell(double n) { return {Kind::shell, n}; }

  double symbol(double k) const {
    switch (kind) {
      case Kind::low: return CutoffChi::value(k / scale);
      case Kind::high: return 1.0 - CutoffChi::value(k / (2.0 * scale));
      case Kind::shell: return CutoffChi::value(k / (2.0 * scale)) - CutoffChi::value(k / scale);
    }
    return 0.0;
  }
  double operator()(const Vec3& xi) const { return symbol(norm(xi)); }
};

/// Dyadic decomposition representable on a grid: a low block P_{<=Nmin}
/// followed by shells Nmin, 2 Nmin, ..., Nmax, where Nmin is the least power of
/// two >= 2 pi / L and Nmax the largest power of two <= the Nyquist frequency.
/// The windows sum to chi(xi / (2 Nmax)), i.e. the identity on |xi| <= 2 Nmax.
struct DyadicBands {
  double n_min;
  double n_max;

  static DyadicBands for_grid(const Grid3& g) {
    const double n_min = std::exp2(std::ceil(std::log2(g.dk()) - 1e-12));
    const double n_max = std::exp2(std::floor(std::log2(g.nyquist()) + 1e-12));
    return {n_min, n_max};
  }

  std::vector<double> shells() const {
    std::vector<double> out;
    for (double n = n_min; n <= n_max * (1.0 + 1e-12); n *= 2.0) out.push_back(n);
    return out;
  }
};

}  // namespace eplab
