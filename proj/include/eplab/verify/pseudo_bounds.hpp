#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "eplab/error.hpp"
#include "eplab/spectral/norms.hpp"
#include "eplab/symbols/pseudo_product.hpp"
#include "eplab/verify/report.hpp"

namespace eplab {

/// Dyadic shells (M, N, O) of output, left and right inputs with Lebesgue
/// exponents 1/r = 1/p + 1/q.
struct TriadSpec {
  double m = 1.0;
  double n = 1.0;
  double o = 1.0;
  double p = 2.0;
  double q = 2.0;
  double r = 1.0;

  double high() const { return std::max({m, n, o}); }
  double low() const { return std::min({m, n, o}); }

  /// min(M, O)/2 <= N <= 2 max(M, O).
  bool admissible() const { return 0.5 * std::min(m, o) <= n && n <= 2.0 * std::max(m, o); }

  void validate() const {
    if (!(m > 0.0 && n > 0.0 && o > 0.0)) throw InvalidArgument("triad: shells must be positive");
    if (!(p > 1.0 && q > 1.0 && r >= 1.0)) throw InvalidArgument("triad: need p, q > 1 and r >= 1");
    if (std::abs(1.0 / r - 1.0 / p - 1.0 / q) > 1e-12) throw InvalidArgument("triad: exponents violate 1/r = 1/p + 1/q");
  }

  std::string label() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "(%g,%g,%g) p=%g q=%g r=%g", m, n, o, p, q, r);
    return buf;
  }
};

struct PseudoScanOptions {
  std::size_t grid_n = 16;
  double box_length = 2.0 * std::numbers::pi;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  double threshold = 100.0;
};

/// Real white noise on the grid, Fourier-projected by `band` and restricted to
/// the 2/3-rule band. Deterministic in (seed, tag, trial).
inline SpectralField random_band_field(const Grid3& g, const Band& band, std::uint64_t seed, std::uint64_t tag,
                                       std::uint64_t trial) {
  std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(sq);
  std::normal_distribution<double> nd(0.0, 1.0);
  SpectralField f(g, Representation::physical, true);
  for (auto& v : f.values()) v = nd(rng);
  f.to_frequency();
  return lp_project(f, band).dealias();
}

/// Random smooth real field: white noise with spectrum weight <k>^{-2},
/// restricted to |k_i| < n/4 lattice units so products of two such fields
/// are alias-free.
inline SpectralField random_smooth_field(const Grid3& g, std::uint64_t seed, std::uint64_t tag, std::uint64_t trial) {
  std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(sq);
  std::normal_distribution<double> nd(0.0, 1.0);
  SpectralField f(g, Representation::physical, true);
  for (auto& v : f.values()) v = nd(rng);
  f.to_frequency();
  const long cut = static_cast<long>(g.n() / 4);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto u = g.unravel(i);
    bool inside = true;
    for (auto c : u) inside = inside && std::abs(g.signed_index(c)) < cut;
    f[i] *= inside ? 1.0 / (1.0 + dot(g.frequency(i), g.frequency(i))) : 0.0;
  }
  return f;
}

/// One triad of the Hölder-type bound with its kernel precomputed:
/// ratio = ||P_M T~[P_N a, P_O b]||_{L^r} / (H (1+L)^5 ||a||_{L^p} ||b||_{L^q}).
class HolderCase {
 public:
  HolderCase(const BilinearSymbolSpec& spec, const ConjPair& eps, const TriadSpec& triad, const PseudoScanOptions& opt)
      : grid_(opt.grid_n, opt.box_length), eps_(eps), triad_(triad), opt_(opt),
        kernel_((triad.validate(), spec), grid_, band_support(grid_, Band::shell(triad.n)),
                band_support(grid_, Band::shell(triad.o)), band_support(grid_, Band::shell(triad.m)),
                DirectOptions{true, 24 * 24 * 24}) {}

  const Grid3& grid() const { return grid_; }
  std::size_t kernel_entries() const { return kernel_.entries(); }

  /// Left-hand side for given inputs (already shell-localized).
  double lhs(const SpectralField& a, const SpectralField& b) const {
    const SpectralField out = kernel_.apply(conjugated(a, eps_.first), conjugated(b, eps_.second));
    return lebesgue_norm(lp_project(out, Band::shell(triad_.m)), triad_.r);
  }

  double rhs(const SpectralField& a, const SpectralField& b) const {
    const double l = triad_.low();
    return triad_.high() * std::pow(1.0 + l, 5) * lebesgue_norm(a, triad_.p) * lebesgue_norm(b, triad_.q);
  }

  std::pair<SpectralField, SpectralField> inputs(std::uint64_t tag, std::uint64_t trial) const {
    return {random_band_field(grid_, Band::shell(triad_.n), opt_.seed, 2 * tag, trial),
            random_band_field(grid_, Band::shell(triad_.o), opt_.seed, 2 * tag + 1, trial)};
  }

  /// Ratio for the trial inputs scaled by (la, lb); 0 when the right side vanishes.
  double ratio(std::uint64_t tag, std::uint64_t trial, double la = 1.0, double lb = 1.0) const {
    auto [a, b] = inputs(tag, trial);
    a *= la;
    b *= lb;
    const double den = rhs(a, b);
    return den > 0.0 ? lhs(a, b) / den : 0.0;
  }

 private:
  Grid3 grid_;
  ConjPair eps_;
  TriadSpec triad_;
  PseudoScanOptions opt_;
  BilinearKernel kernel_;
};

/// Max over triads and trials of the Hölder-type ratio. Sample point:
/// (triad index, trial).
inline ScanReport check_holder_pseudo_product(const BilinearSymbolSpec& spec, const ConjPair& eps,
                                              const std::vector<TriadSpec>& triads, const PseudoScanOptions& opt = {}) {
  ScanReport rep("holder " + spec.label() + " " + eps.label(), ScanReport::Rule::max_at_most, opt.threshold);
  for (std::size_t t = 0; t < triads.size(); ++t) {
    const HolderCase hc(spec, eps, triads[t], opt);
    for (std::size_t k = 0; k < opt.trials; ++k) rep.observe(hc.ratio(t, k), {double(t), double(k)});
  }
  return rep.finalize();
}

/// Hölder's inequality on the grid: ||a b||_{L^r} / (||a||_{L^p} ||b||_{L^q})
/// for real random fields; exactly <= 1 for Riemann sums.
inline ScanReport check_holder_reduction(const TriadSpec& exps, const PseudoScanOptions& opt = {}) {
  exps.validate();
  const Grid3 g(opt.grid_n, opt.box_length);
  ScanReport rep("holder reduction m=1", ScanReport::Rule::max_at_most, 1.05);
  for (std::size_t k = 0; k < opt.trials; ++k) {
    const SpectralField a = random_band_field(g, Band::shell(exps.n), opt.seed, 101, k).physical();
    const SpectralField b = random_band_field(g, Band::shell(exps.o), opt.seed, 102, k).physical();
    SpectralField ab = a;
    for (std::size_t i = 0; i < g.size(); ++i) ab[i] = a[i] * b[i];
    const double den = lebesgue_norm(a, exps.p) * lebesgue_norm(b, exps.q);
    rep.observe(den > 0.0 ? lebesgue_norm(ab, exps.r) / den : 0.0, {double(k)});
  }
  return rep.finalize();
}

struct LhCase {
  double m = 1.0;
  double sigma = 2.0;
  double theta = 0.0;
  double p = 10.0;
  double q = 2.5;
  double r = 2.0;

  /// 5 on M >= 1, 0 on M < 1.
  double gamma() const { return m >= 1.0 ? 5.0 : 0.0; }

  void validate() const {
    if (!(m > 0.0)) throw InvalidArgument("lh bound: M must be positive");
    if (!(sigma >= 0.0)) throw InvalidArgument("lh bound: sigma must be >= 0");
    if (!(theta >= 0.0 && theta <= gamma())) throw InvalidArgument("lh bound: need 0 <= theta <= gamma");
    if (!(p >= 2.0 && q > 2.0 && r > 1.0)) throw InvalidArgument("lh bound: need p >= 2, q > 2, r > 1");
  }
};

/// ratio = ||P_{>=M/8} T[P_M a, P_{>=M/8} b]||_{B^sigma_{r,2}}
///       / (||a||_{W^{gamma-theta,p}} || |D| b ||_{B^{sigma+theta}_{q,2}}).
class LhBoundCase {
 public:
  LhBoundCase(const BilinearSymbolSpec& spec, const ConjPair& eps, const LhCase& c, const PseudoScanOptions& opt)
      : grid_(opt.grid_n, opt.box_length), eps_(eps), case_(c), opt_(opt),
        kernel_((c.validate(), spec), grid_, band_support(grid_, Band::shell(c.m)),
                band_support(grid_, Band::high(c.m / 8.0)), band_support(grid_, Band::high(c.m / 8.0)),
                DirectOptions{true, 24 * 24 * 24}) {}

  double ratio(std::uint64_t tag, std::uint64_t trial, double lb = 1.0) const {
    SpectralField a = random_band_field(grid_, Band::shell(case_.m), opt_.seed, 2 * tag, trial);
    SpectralField b = random_band_field(grid_, Band::high(case_.m / 8.0), opt_.seed, 2 * tag + 1, trial);
    b *= lb;
    const SpectralField out = lp_project(kernel_.apply(conjugated(a, eps_.first), conjugated(b, eps_.second)),
                                         Band::high(case_.m / 8.0));
    const double lhs = besov_norm(out, {case_.sigma, case_.r, 2.0});
    const double rhs = sobolev_norm(a, case_.gamma() - case_.theta, case_.p) *
                       besov_norm(apply_multiplier(b, mult::abs_grad()), {case_.sigma + case_.theta, case_.q, 2.0});
    return rhs > 0.0 ? lhs / rhs : 0.0;
  }

 private:
  Grid3 grid_;
  ConjPair eps_;
  LhCase case_;
  PseudoScanOptions opt_;
  BilinearKernel kernel_;
};

inline ScanReport check_lh_bound(const BilinearSymbolSpec& spec, const ConjPair& eps, const std::vector<LhCase>& cases,
                                 const PseudoScanOptions& opt = {}) {
  ScanReport rep("lh bound " + spec.label() + " " + eps.label(), ScanReport::Rule::max_at_most, opt.threshold);
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const LhBoundCase lc(spec, eps, cases[c], opt);
    for (std::size_t k = 0; k < opt.trials; ++k) rep.observe(lc.ratio(c, k), {double(c), double(k)});
  }
  return rep.finalize();
}

/// ||a b||_{H^gamma} / (||a||_{H^gamma} ||b||_{W^{1,10}} + ||a||_{W^{1,10}} ||b||_{H^gamma}).
inline double prodform_ratio(const SpectralField& a, const SpectralField& b, double gamma) {
  const SpectralField ap = a.physical(), bp = b.physical();
  SpectralField ab = ap;
  for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = ap[i] * bp[i];
  const double rhs = sobolev_h_norm(a, gamma) * sobolev_norm(b, 1.0, 10.0) +
                     sobolev_norm(a, 1.0, 10.0) * sobolev_h_norm(b, gamma);
  return rhs > 0.0 ? sobolev_h_norm(ab, gamma) / rhs : 0.0;
}

/// Max of prodform_ratio over gammas and random smooth pairs. Sample point:
/// (gamma, trial).
inline ScanReport check_prodform(const std::vector<double>& gammas, PseudoScanOptions opt = {}) {
  ScanReport rep("prodform", ScanReport::Rule::max_at_most, opt.threshold);
  const Grid3 g(opt.grid_n, opt.box_length);
  for (double gamma : gammas) {
    if (!(gamma >= 0.0)) throw InvalidArgument("prodform: gamma must be >= 0");
    for (std::size_t k = 0; k < opt.trials; ++k) {
      const SpectralField a = random_smooth_field(g, opt.seed, 201, k);
      const SpectralField b = random_smooth_field(g, opt.seed, 202, k);
      rep.observe(prodform_ratio(a, b, gamma), {gamma, double(k)});
    }
  }
  return rep.finalize();
}

}  // namespace eplab
