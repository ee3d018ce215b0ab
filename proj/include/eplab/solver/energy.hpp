#pragma once

#include <cmath>
#include <vector>

#include "eplab/solver/model.hpp"

namespace eplab {

namespace detail {

// sum over multi-indices |gamma| <= order of xi^{2 gamma}.
inline double multi_index_weight(const Vec3& xi, int order) {
  const double a = xi[0] * xi[0], b = xi[1] * xi[1], c = xi[2] * xi[2];
  double total = 0.0, pa = 1.0;
  for (int i = 0; i <= order; ++i, pa *= a) {
    double pb = 1.0;
    for (int j = 0; i + j <= order; ++j, pb *= b) {
      double pc = 1.0;
      for (int k = 0; i + j + k <= order; ++k, pc *= c) total += pa * pb * pc;
    }
  }
  return total;
}

}  // namespace detail

/// E_N = sum_{|gamma|<=N} int |d^gamma n|^2 + rho |d^gamma u|^2 + ||D|^{-1} d^gamma n|^2,
/// with n the mean-free part of rho - 1 and rho = 1 + n.
inline double energy_en(const FluidState& s, int order) {
  if (order < 0) throw InvalidArgument("energy_en: order must be non-negative");
  const Grid3& g = s.grid();
  const SpectralField n = s.n.frequency();
  const std::array<SpectralField, 3> u{s.u[0].frequency(), s.u[1].frequency(), s.u[2].frequency()};
  double quad = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const Vec3 xi = g.frequency(i);
    const double w = detail::multi_index_weight(xi, order);
    quad += w * ((1.0 + 1.0 / dot(xi, xi)) * std::norm(n[i]) + std::norm(u[0][i]) + std::norm(u[1][i]) + std::norm(u[2][i]));
  }
  quad *= g.volume();

  // Density-weighted correction int n |d^gamma u|^2, one physical field per gamma.
  SpectralField nt = n;
  nt[0] = 0.0;
  const SpectralField n_phys = nt.physical();
  if (n_phys.max_abs() == 0.0) return quad;
  std::vector<double> acc(g.size(), 0.0);
  std::vector<Vec3> freq(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) freq[i] = g.frequency(i);
  for (int a = 0; a <= order; ++a) {
    for (int b = 0; a + b <= order; ++b) {
      for (int c = 0; a + b + c <= order; ++c) {
        for (int j = 0; j < 3; ++j) {
          SpectralField d(g, Representation::frequency, false);
          for (std::size_t i = 0; i < g.size(); ++i) {
            if (u[j][i] == cplx{} || g.is_nyquist(i)) continue;
            const Vec3& k = freq[i];
            const cplx ik = std::pow(cplx{0.0, 1.0}, a + b + c);
            d[i] = ik * std::pow(k[0], a) * std::pow(k[1], b) * std::pow(k[2], c) * u[j][i];
          }
          d.to_physical();
          for (std::size_t i = 0; i < g.size(); ++i) acc[i] += std::norm(d[i]);
        }
      }
    }
  }
  double corr = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) corr += n_phys[i].real() * acc[i];
  return quad + corr * g.cell_volume();
}

/// sup over grid shells M of (M^{3/4} + M^{4/3}) ||P_M alpha||_{L^inf}.
inline double zprime_bound(const AlphaState& a) {
  const DyadicBands bands = DyadicBands::for_grid(a.grid());
  const SpectralField h = a.alpha.frequency();
  double best = 0.0;
  for (double m : bands.shells()) {
    const double w = std::pow(m, 0.75) + std::pow(m, 4.0 / 3.0);
    best = std::max(best, w * lebesgue_norm(lp_project(h, Band::shell(m)), kInf));
  }
  return best;
}

}  // namespace eplab
