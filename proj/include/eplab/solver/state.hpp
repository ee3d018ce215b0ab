#pragma once

#include <array>
#include <cmath>
#include <string>

#include "eplab/spectral/norms.hpp"

namespace eplab {

/// Fluid variables (rho - 1, u) in frequency representation.
///
/// The zero mode of rho - 1 is the (time-invariant) mean charge density. It is
/// stored in `n` but never enters the dynamics: on the torus the Poisson
/// problem only sees the mean-free part.
struct FluidState {
  SpectralField n;
  std::array<SpectralField, 3> u;
  double time = 0.0;

  const Grid3& grid() const { return n.grid(); }

  static FluidState equilibrium(const Grid3& g) {
    auto z = SpectralField::zeros(g);
    return {z, {z, z, z}, 0.0};
  }

  double mean_density() const { return n.frequency()[0].real(); }
};

/// The complex unknown alpha = <D>|D|^{-1}(rho-1) + i |D|^{-1} div u, with
/// the decoupled mean of rho - 1 carried alongside.
struct AlphaState {
  SpectralField alpha;
  double mean_n = 0.0;
  double time = 0.0;

  const Grid3& grid() const { return alpha.grid(); }
};

enum class DataFamily { gaussian, bump, dipole };

inline DataFamily parse_family(const std::string& s) {
  if (s == "gaussian") return DataFamily::gaussian;
  if (s == "bump") return DataFamily::bump;
  if (s == "dipole") return DataFamily::dipole;
  throw InvalidArgument("unknown data family '" + s + "'");
}

struct PerturbationParams {
  DataFamily family = DataFamily::gaussian;
  double delta = 1e-3;
  double width = 1.0;
  /// Defaults to the box center when unset (all negative).
  Vec3 center{-1.0, -1.0, -1.0};
  bool neutral = false;
  /// Multiplies the velocity potential; 0 gives data at rest.
  double velocity_scale = 1.0;

  static constexpr double kMaxDelta = 0.05;
};

/// Diameter beyond which the profile is treated as vanishing (for the horizon).
inline double data_diameter(const PerturbationParams& p) {
  return p.family == DataFamily::bump ? 2.0 * p.width : 6.0 * p.width;
}

namespace detail {

inline Vec3 min_image(const Vec3& x, const Vec3& c, double box) {
  Vec3 d = x - c;
  for (auto& v : d) v -= box * std::round(v / box);
  return d;
}

inline double profile(DataFamily f, const Vec3& d, double w) {
  const double r2 = dot(d, d) / (w * w);
  switch (f) {
    case DataFamily::gaussian: return std::exp(-0.5 * r2);
    case DataFamily::dipole: return d[0] / w * std::exp(-0.5 * r2);
    case DataFamily::bump: return r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
  }
  return 0.0;
}

}  // namespace detail

/// rho0 - 1 = delta G, u0 = delta grad(psi) with psi = width * G_bump, both
/// projected onto the 2/3-rule band. `neutral` removes the mean of rho0 - 1.
inline FluidState init_perturbation(const Grid3& g, const PerturbationParams& p) {
  if (!(std::abs(p.delta) <= PerturbationParams::kMaxDelta)) {
    throw InvalidArgument("init_perturbation: amplitude-too-large (|delta| must be <= 0.05)");
  }
  if (!(p.width > 0.0) || 8.0 * p.width > g.box_length()) {
    throw InvalidArgument("init_perturbation: width-vs-box violation (need 0 < 8 width <= L)");
  }
  const double box = g.box_length();
  const Vec3 c = p.center[0] < 0.0 ? Vec3{box / 2, box / 2, box / 2} : p.center;
  SpectralField n = SpectralField::from_function(g, [&](const Vec3& x) {
    return p.delta * detail::profile(p.family, detail::min_image(x, c, box), p.width);
  });
  // The potential always uses the even profile so u0 is a gradient of a bump.
  const DataFamily pot = p.family == DataFamily::dipole ? DataFamily::gaussian : p.family;
  SpectralField psi = SpectralField::from_function(g, [&](const Vec3& x) {
    return p.velocity_scale * p.delta * p.width * detail::profile(pot, detail::min_image(x, c, box), p.width);
  });
  n.to_frequency().dealias();
  psi.to_frequency().dealias();
  if (p.neutral) n[0] = 0.0;
  FluidState s{n, {psi, psi, psi}, 0.0};
  for (int j = 0; j < 3; ++j) s.u[j] = apply_multiplier(psi, mult::partial(j));
  return s;
}

/// ||curl u||_{L^2} via Plancherel.
inline double curl_norm(const FluidState& s) {
  const Grid3& g = s.grid();
  std::array<SpectralField, 3> uh{s.u[0].frequency(), s.u[1].frequency(), s.u[2].frequency()};
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 k = g.frequency(i);
    const cplx I{0.0, 1.0};
    const cplx c0 = I * (k[1] * uh[2][i] - k[2] * uh[1][i]);
    const cplx c1 = I * (k[2] * uh[0][i] - k[0] * uh[2][i]);
    const cplx c2 = I * (k[0] * uh[1][i] - k[1] * uh[0][i]);
    acc += std::norm(c0) + std::norm(c1) + std::norm(c2);
  }
  return std::sqrt(acc * g.volume());
}

inline double velocity_h1(const FluidState& s) {
  double acc = 0.0;
  for (const auto& c : s.u) acc += std::pow(sobolev_h_norm(c, 1.0), 2);
  return std::sqrt(acc);
}

}  // namespace eplab
