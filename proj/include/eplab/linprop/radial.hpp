#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "eplab/error.hpp"
#include "eplab/spectral/cutoff.hpp"
#include "eplab/spectral/fft.hpp"
#include "eplab/spectral/grid.hpp"

namespace eplab {

/// Radial frequency profile fhat(|k|) on R^3, for the unitary transform
/// f(x) = (2 pi)^{-3/2} int fhat(k) e^{ik.x} dk.
///
/// The profile is held as k -> k fhat(k), which stays bounded for the
/// charged low-frequency part whose fhat behaves like 1/k at the origin.
struct RadialProfile {
  std::string name;
  std::function<double(double)> k_fhat;
  /// fhat is treated as zero beyond k_max.
  double k_max = 0.0;
  /// Radius containing the physical profile up to a negligible tail.
  double r_data = 0.0;

  double fhat(double k) const { return k_fhat(k) / k; }

  /// fhat = w^3 exp(-w^2 k^2 / 2), i.e. f(x) = exp(-|x|^2 / (2 w^2)).
  static RadialProfile gaussian(double width = 1.0, double amplitude = 1.0) {
    if (!(width > 0.0)) throw InvalidArgument("gaussian profile: width must be positive");
    const double w3 = amplitude * width * width * width;
    return {"gaussian", [=](double k) { return w3 * k * std::exp(-0.5 * width * width * k * k); },
            std::sqrt(2.0 * 36.0) / width, 12.0 * width};
  }

  /// Low-frequency part chi(k) fhat.
  RadialProfile low_part() const {
    auto base = k_fhat;
    return {"P<=1 " + name, [base](double k) { return CutoffChi::value(k) * base(k); }, std::min(k_max, 2.0),
            r_data};
  }

  /// chi(k) <k>/k fhat: P_{<=1} Re alpha(0) for data at rest with rho0 - 1 = f.
  RadialProfile charged_low() const {
    auto base = k_fhat;
    return {"chiQ " + name, [base](double k) { return CutoffChi::value(k) * std::sqrt(1.0 + k * k) * base(k) / k; },
            std::min(k_max, 2.0), r_data};
  }

  RadialProfile windowed(const Band& b) const {
    auto base = k_fhat;
    double top = k_max;
    if (b.kind == Band::Kind::low) top = std::min(top, 2.0 * b.scale);
    if (b.kind == Band::Kind::shell) top = std::min(top, 4.0 * b.scale);
    return {name, [base, b](double k) { return b.symbol(k) * base(k); }, top, r_data};
  }

  static RadialProfile combine(double a, const RadialProfile& f, double b, const RadialProfile& g) {
    auto ff = f.k_fhat, gg = g.k_fhat;
    return {"combination", [=](double k) { return a * ff(k) + b * gg(k); }, std::max(f.k_max, g.k_max),
            std::max(f.r_data, g.r_data)};
  }
};

namespace radial {

/// sqrt(2/pi) = (2 pi)^{-3/2} 4 pi.
inline constexpr double kC = 0.79788456080286535588;

using cplx = std::complex<double>;

/// Gauss-Legendre panel quadrature of int_0^{k_max} F(k) dk with `panels` equal panels.
template <class F>
cplx panel_integral(const F& f, double k_max, std::size_t panels, double* abs_acc = nullptr) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double h = k_max / static_cast<double>(panels);
  cplx acc{};
  double aacc = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    for (std::size_t j = 0; j < x.size(); ++j) {
      for (int s : {-1, 1}) {
        const cplx v = f(mid + s * 0.5 * h * x[j]);
        acc += w[j] * v;
        aacc += w[j] * std::abs(v);
      }
    }
  }
  if (abs_acc) *abs_acc = 0.5 * h * aacc;
  return 0.5 * h * acc;
}

}  // namespace radial

/// u(t, r) = c int_0^{k_max} e^{it<k>} fhat(k) sinc(kr) k^2 dk by Gauss-Legendre
/// panels no longer than pi / (2(t + r + 1)), halved until two successive
/// results agree to 1e-10 (relative to the absolute integral).
inline std::complex<double> kg_propagate_radial(const RadialProfile& prof, double t, double r, int max_halvings = 8) {
  if (!(t >= 0.0) || !(r >= 0.0)) throw InvalidArgument("kg_propagate_radial: t and r must be non-negative");
  auto integrand = [&](double k) {
    const double kernel = r > 0.0 ? std::sin(k * r) / r : k;
    return std::polar(prof.k_fhat(k) * kernel, t * std::sqrt(1.0 + k * k));
  };
  const double len = std::numbers::pi / (2.0 * (t + r + 1.0));
  auto panels = static_cast<std::size_t>(std::ceil(prof.k_max / len));
  double scale = 0.0;
  std::complex<double> prev = radial::panel_integral(integrand, prof.k_max, panels, &scale);
  for (int h = 0; h < max_halvings; ++h) {
    panels *= 2;
    const std::complex<double> next = radial::panel_integral(integrand, prof.k_max, panels);
    if (std::abs(next - prev) <= 1e-10 * std::max(scale, 1e-300)) return radial::kC * next;
    prev = next;
  }
  throw QuadratureError("kg_propagate_radial: panel refinement did not converge");
}

/// Samples of a radial field u(r_m), r_m = m dr, with optional radial derivative.
struct RadialField {
  double dr = 0.0;
  std::vector<std::complex<double>> u;
  std::vector<std::complex<double>> du;

  double radius(std::size_t m) const { return static_cast<double>(m) * dr; }
};

struct RadialFftOptions {
  /// Spatial resolution: the k-range of the transform is [-pad k_top, pad k_top).
  double pad = 8.0;
  /// Extra radius reserved for the tail of a frequency window at scale N: tail / N.
  double tail = 200.0;
  bool gradient = false;
};

/// e^{it<D>} applied to a radial profile, sampled on a uniform radial grid.
///
/// With h(k) = e^{it<k>} k fhat(k) extended oddly, r u(r) = (c / 2i) int h(k) e^{ikr} dk,
/// evaluated by the trapezoid rule as one FFT. The k-step is chosen so that the
/// period in r exceeds twice the radius reached by the propagated data.
inline RadialField kg_radial_field(const RadialProfile& prof, double t, double window_scale = 1.0,
                                   const RadialFftOptions& opt = {}) {
  if (!(t >= 0.0)) throw InvalidArgument("kg_radial_field: t must be non-negative");
  const double k_top = prof.k_max;
  const double k_pad = opt.pad * k_top;
  const double speed = k_top / std::sqrt(1.0 + k_top * k_top);
  const double r_need = t * speed + opt.tail / window_scale + prof.r_data;
  const double want = 2.0 * k_pad * r_need / std::numbers::pi;
  std::size_t m = 256;
  while (static_cast<double>(m) < want) m *= 2;
  const double dk = 2.0 * k_pad / static_cast<double>(m);

  std::vector<std::complex<double>> h(m), kh;
  for (std::size_t j = 1; j < m / 2; ++j) {
    const double k = static_cast<double>(j) * dk;
    if (k > k_top) break;
    const auto v = std::polar(prof.k_fhat(k), t * std::sqrt(1.0 + k * k));
    h[j] = v;
    h[m - j] = -v;
  }
  kh = h;
  for (std::size_t j = 1; j < m; ++j) {
    const double k = (j < m / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(m)) * dk;
    kh[j] *= std::complex<double>{0.0, k};
  }
  fft::transform1(h, +1);
  fft::transform1(kh, +1);
  const std::complex<double> pref = radial::kC * dk / std::complex<double>{0.0, 2.0};
  RadialField out;
  out.dr = 2.0 * std::numbers::pi / (static_cast<double>(m) * dk);
  const std::size_t half = m / 2;
  out.u.resize(half);
  if (opt.gradient) out.du.resize(half);
  for (std::size_t i = 0; i < half; ++i) {
    const double r = out.radius(i);
    const std::complex<double> ru_prime = pref * kh[i];
    if (i == 0) {
      out.u[0] = ru_prime;
      continue;
    }
    out.u[i] = pref * h[i] / r;
    if (opt.gradient) out.du[i] = (ru_prime - out.u[i]) / r;
  }
  return out;
}

/// L^p(R^3) norm of sampled radial data by the trapezoid rule with weight 4 pi r^2.
inline double radial_lp_norm(const RadialField& f, double p, bool gradient = false) {
  const auto& v = gradient ? f.du : f.u;
  if (v.empty()) throw InvalidArgument("radial_lp_norm: missing samples");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double scale = 0.0;
  for (const auto& x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double r = f.radius(i);
    acc += std::pow(std::abs(v[i]) / scale, p) * r * r;
  }
  return scale * std::pow(4.0 * std::numbers::pi * acc * f.dr, 1.0 / p);
}

/// Dyadic range of frequency windows used on R^3: shells 2^j for j_lo <= j <= j_hi.
struct ShellRange {
  int j_lo = -16;
  int j_hi = 4;
};

/// Besov norm B^sigma_{p,q}(R^3) of e^{it<D>} f (or of its gradient), summed over
/// the shells P_N, N = 2^j in the given range; shells beyond k_max are empty.
inline std::vector<double> radial_besov_terms(const RadialProfile& prof, double t, double sigma, double p,
                                              bool gradient = false, ShellRange range = {},
                                              RadialFftOptions opt = {}) {
  opt.gradient = gradient;
  std::vector<double> terms;
  for (int j = range.j_lo; j <= range.j_hi; ++j) {
    const double n = std::ldexp(1.0, j);
    if (n >= prof.k_max) break;
    const RadialProfile shell = prof.windowed(Band::shell(n));
    const RadialField field = kg_radial_field(shell, t, n, opt);
    terms.push_back(std::pow(jbracket(n), sigma) * radial_lp_norm(field, p, gradient));
  }
  return terms;
}

inline double radial_besov_norm(const RadialProfile& prof, double t, double sigma, double p, double q,
                                bool gradient = false, ShellRange range = {}, RadialFftOptions opt = {}) {
  const auto terms = radial_besov_terms(prof, t, sigma, p, gradient, range, opt);
  if (terms.empty()) return 0.0;
  if (std::isinf(q)) return *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double v : terms) acc += std::pow(v, q);
  return std::pow(acc, 1.0 / q);
}

/// ||fhat||_{L^2(R^3)} = (4 pi int |fhat|^2 k^2 dk)^{1/2}, with a <k>^s weight.
inline double radial_plancherel(const RadialProfile& prof, double s = 0.0) {
  auto f = [&](double k) {
    const double v = prof.k_fhat(k);
    return std::complex<double>{v * v * std::pow(1.0 + k * k, s), 0.0};
  };
  const auto panels = static_cast<std::size_t>(std::ceil(prof.k_max * 8.0));
  return std::sqrt(4.0 * std::numbers::pi * radial::panel_integral(f, prof.k_max, std::max<std::size_t>(panels, 8)).real());
}

}  // namespace eplab
