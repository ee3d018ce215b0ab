#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "eplab/spectral/multiplier.hpp"

namespace eplab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Which norm to evaluate. Exponents p, q live in [1, inf].
struct NormSpec {
  struct Lebesgue { double p; };
  struct Sobolev { double s; double p; };
  struct Besov {
    double sigma;
    double p;
    double q;
    /// Optional explicit shell range; defaults to the grid's dyadic bands.
    std::optional<double> n_min{};
    std::optional<double> n_max{};
  };
  struct H { double order; };

  std::variant<Lebesgue, Sobolev, Besov, H> kind;

  static NormSpec lebesgue(double p) { return {Lebesgue{p}}; }
  static NormSpec sobolev(double s, double p) { return {Sobolev{s, p}}; }
  static NormSpec besov(double sigma, double p, double q) { return {Besov{sigma, p, q}}; }
  static NormSpec h(double order) { return {H{order}}; }
};

namespace detail {

inline void check_exponent(double p, const char* what) {
  if (!(p >= 1.0)) throw InvalidArgument(std::string("norm: exponent ") + what + " must lie in [1, inf]");
}

}  // namespace detail

/// L^p norm by midpoint quadrature with cell weight (L / n)^3.
inline double lebesgue_norm(const SpectralField& f, double p) {
  detail::check_exponent(p, "p");
  const SpectralField x = f.physical();
  if (std::isinf(p)) return x.max_abs();
  const double w = f.grid().cell_volume();
  double acc = 0.0;
  if (p == 2.0) {
    for (const auto& v : x.values()) acc += std::norm(v);
    return std::sqrt(acc * w);
  }
  // Scale by the maximum so large p does not underflow.
  const double m = x.max_abs();
  if (m == 0.0) return 0.0;
  for (const auto& v : x.values()) acc += std::pow(std::abs(v) / m, p);
  return m * std::pow(acc * w, 1.0 / p);
}

/// Frequency-side l2 norm scaled to equal the L^2 norm (Plancherel).
inline double plancherel_norm(const SpectralField& f) {
  const SpectralField h = f.frequency();
  double acc = 0.0;
  for (const auto& v : h.values()) acc += std::norm(v);
  return std::sqrt(acc * f.grid().volume());
}

/// H^s norm via Plancherel: (L^3 sum <xi>^{2s} |fhat|^2)^{1/2}.
inline double sobolev_h_norm(const SpectralField& f, double s) {
  const SpectralField h = f.frequency();
  const Grid3& g = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (h[i] == cplx{}) continue;
    const Vec3 xi = g.frequency(i);
    acc += std::pow(1.0 + dot(xi, xi), s) * std::norm(h[i]);
  }
  return std::sqrt(acc * g.volume());
}

inline double sobolev_norm(const SpectralField& f, double s, double p) {
  if (p == 2.0) return sobolev_h_norm(f, s);
  if (s == 0.0) return lebesgue_norm(f, p);
  return lebesgue_norm(apply_multiplier(f, mult::jbracket_pow(s)), p);
}

/// Per-band contributions <N>^sigma ||P_N f||_{L^p}; the low block P_{<=Nmin}
/// comes first and is weighted with <Nmin>^sigma.
inline std::vector<double> besov_terms(const SpectralField& f, const NormSpec::Besov& b) {
  detail::check_exponent(b.p, "p");
  const DyadicBands bands = DyadicBands::for_grid(f.grid());
  const double n_min = b.n_min.value_or(bands.n_min);
  const double n_max = b.n_max.value_or(bands.n_max);
  std::vector<double> terms;
  if (n_min > n_max * (1.0 + 1e-12)) return terms;
  const SpectralField h = f.frequency();
  if (!b.n_min) {
    terms.push_back(std::pow(jbracket(n_min), b.sigma) * lebesgue_norm(lp_project(h, Band::low(n_min)), b.p));
  }
  for (double n = n_min; n <= n_max * (1.0 + 1e-12); n *= 2.0) {
    terms.push_back(std::pow(jbracket(n), b.sigma) * lebesgue_norm(lp_project(h, Band::shell(n)), b.p));
  }
  return terms;
}

inline double lq_sum(const std::vector<double>& terms, double q) {
  if (std::isinf(q)) return *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::pow(t, q);
  return std::pow(acc, 1.0 / q);
}

inline double besov_norm(const SpectralField& f, const NormSpec::Besov& b) {
  detail::check_exponent(b.q, "q");
  const auto terms = besov_terms(f, b);
  if (terms.empty()) {
    if (std::isinf(b.q)) throw InvalidArgument("norm: q = inf with an empty shell set");
    return 0.0;
  }
  return lq_sum(terms, b.q);
}

inline double norm(const SpectralField& f, const NormSpec& spec) {
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, NormSpec::Lebesgue>) return lebesgue_norm(f, k.p);
        else if constexpr (std::is_same_v<T, NormSpec::Sobolev>) return sobolev_norm(f, k.s, k.p);
        else if constexpr (std::is_same_v<T, NormSpec::Besov>) return besov_norm(f, k);
        else return sobolev_h_norm(f, k.order);
      },
      spec.kind);
}

/// ||f||_Y = ||f||_{W^{sigma+2, 10/9}} + ||f||_{H^N}.
inline double y_norm(const SpectralField& f, double sigma, double big_n) {
  return sobolev_norm(f, sigma + 2.0, 10.0 / 9.0) + sobolev_h_norm(f, big_n);
}

/// Integrand of the X_T norm at one time: (1+t)^{6/5} ||f||_{B^sigma_{10,2}} + ||f||_{H^N}.
struct XtComponents {
  double weighted_besov;
  double hn;
  double total() const { return weighted_besov + hn; }
};

inline XtComponents xt_components(const SpectralField& f, double t, double sigma, double big_n) {
  return {std::pow(1.0 + t, 1.2) * besov_norm(f, {sigma, 10.0, 2.0}), sobolev_h_norm(f, big_n)};
}

}  // namespace eplab
