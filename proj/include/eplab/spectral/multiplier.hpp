#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "eplab/spectral/cutoff.hpp"
#include "eplab/spectral/field.hpp"

namespace eplab {

/// Scalar Fourier multiplier m(i nabla): f -> F^{-1}[m F f].
///
/// `annihilate_zero` marks symbols singular at xi = 0 (|xi|^{-1}, Riesz
/// transforms); for those the zero-mode amplitude of the output is set to 0.
struct Multiplier {
  std::string name;
  std::function<cplx(const Vec3&)> symbol;
  bool annihilate_zero = false;

  cplx operator()(const Vec3& xi) const { return symbol(xi); }
};

namespace mult {

inline constexpr cplx I{0.0, 1.0};

inline Multiplier identity() { return {"Id", [](const Vec3&) { return cplx{1.0, 0.0}; }}; }
inline Multiplier abs_grad() { return {"|D|", [](const Vec3& x) { return cplx{norm(x), 0.0}; }}; }
inline Multiplier inv_abs_grad() {
  return {"|D|^-1", [](const Vec3& x) { return cplx{1.0 / norm(x), 0.0}; }, true};
}
inline Multiplier jbracket_op() { return {"<D>", [](const Vec3& x) { return cplx{jbracket(x), 0.0}; }}; }
inline Multiplier inv_jbracket() { return {"<D>^-1", [](const Vec3& x) { return cplx{1.0 / jbracket(x), 0.0}; }}; }
inline Multiplier jbracket_pow(double s) {
  return {"<D>^" + std::to_string(s), [s](const Vec3& x) { return cplx{std::pow(1.0 + dot(x, x), 0.5 * s), 0.0}; }};
}

/// Riesz transform R_j = |nabla|^{-1} d_j, symbol i xi_j / |xi|.
inline Multiplier riesz(int j) {
  return {"R" + std::to_string(j), [j](const Vec3& x) { return I * (x[j] / norm(x)); }, true};
}
inline Multiplier partial(int j) { return {"d" + std::to_string(j), [j](const Vec3& x) { return I * x[j]; }}; }
inline Multiplier abs_over_jbracket() {
  return {"|D|/<D>", [](const Vec3& x) { return cplx{norm(x) / jbracket(x), 0.0}; }};
}
inline Multiplier jbracket_over_abs() {
  return {"<D>/|D|", [](const Vec3& x) { return cplx{jbracket(x) / norm(x), 0.0}; }, true};
}
/// Free Klein-Gordon flow e^{i t <nabla>}.
inline Multiplier kg_flow(double t) {
  return {"exp(it<D>)", [t](const Vec3& x) { return std::exp(I * (t * jbracket(x))); }};
}
inline Multiplier band(const Band& b) {
  return {"band", [b](const Vec3& x) { return cplx{b(x), 0.0}; }};
}

/// Pointwise product of symbols; singular if either factor is.
inline Multiplier compose(const Multiplier& a, const Multiplier& b) {
  return {a.name + "*" + b.name, [a, b](const Vec3& x) { return a.symbol(x) * b.symbol(x); },
          a.annihilate_zero || b.annihilate_zero};
}

}  // namespace mult

/// Symbol values precomputed on a grid, with the zero-mode and Nyquist
/// conventions already applied. Cheap to apply repeatedly.
class SymbolTable {
 public:
  SymbolTable(const Grid3& g, const Multiplier& m) : grid_(g), values_(g.size()), real_symbol_(true) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.is_nyquist(i)) { values_[i] = 0.0; continue; }
      if (i == 0 && m.annihilate_zero) { values_[i] = 0.0; continue; }
      const cplx v = m.symbol(g.frequency(i));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw InvalidArgument("multiplier '" + m.name + "' is not finite on a lattice mode");
      }
      values_[i] = v;
    }
    // Real-valued output on real input requires m(-xi) = conj(m(xi)).
    for (std::size_t i = 0; i < g.size() && real_symbol_; ++i) {
      if (std::abs(values_[g.negate_index(i)] - std::conj(values_[i])) > 1e-14 * (1.0 + std::abs(values_[i]))) {
        real_symbol_ = false;
      }
    }
  }

  const Grid3& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }
  /// True when the operator maps real fields to real fields.
  bool preserves_reality() const { return real_symbol_; }

  SpectralField apply(const SpectralField& f) const {
    SpectralField out = f.frequency();
    apply_in_place(out);
    return out;
  }

  void apply_in_place(SpectralField& f) const {
    if (!(f.grid() == grid_)) throw InvalidArgument("SymbolTable: grid mismatch");
    f.to_frequency();
    auto& v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= values_[i];
    f.set_real(f.is_real() && real_symbol_);
  }

 private:
  Grid3 grid_;
  std::vector<cplx> values_;
  bool real_symbol_;
};

inline SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m) {
  return SymbolTable(f.grid(), m).apply(f);
}

inline SpectralField lp_project(const SpectralField& f, const Band& b) { return apply_multiplier(f, mult::band(b)); }

}  // namespace eplab
