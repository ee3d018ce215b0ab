#pragma once

#include <array>
#include <memory>
#include <vector>

#include "eplab/solver/state.hpp"

namespace eplab {

struct FluidTendency {
  SpectralField dn;
  std::array<SpectralField, 3> du;
};

/// Electron Euler-Poisson with pressure rho^2/2 on a periodic grid, in fluid
/// variables and in the alpha variable. Symbol tables are built once per grid.
///
/// Every pointwise product is formed from 2/3-band inputs and truncated to
/// the band, so both formulations produce identical quadratic terms.
class EulerPoissonModel {
 public:
  explicit EulerPoissonModel(const Grid3& g)
      : grid_(g),
        abs_over_jb_(g, mult::abs_over_jbracket()),
        jb_over_abs_(g, mult::jbracket_over_abs()),
        abs_(g, mult::abs_grad()),
        inv_abs_(g, mult::inv_abs_grad()),
        i_jb_(g, Multiplier{"i<D>", [](const Vec3& x) { return cplx{0.0, jbracket(x)}; }}),
        riesz_{SymbolTable(g, mult::riesz(0)), SymbolTable(g, mult::riesz(1)), SymbolTable(g, mult::riesz(2))},
        riesz_jb_{SymbolTable(g, mult::compose(mult::riesz(0), mult::jbracket_op())),
                  SymbolTable(g, mult::compose(mult::riesz(1), mult::jbracket_op())),
                  SymbolTable(g, mult::compose(mult::riesz(2), mult::jbracket_op()))},
        partial_{SymbolTable(g, mult::partial(0)), SymbolTable(g, mult::partial(1)), SymbolTable(g, mult::partial(2))} {}

  const Grid3& grid() const { return grid_; }

  AlphaState to_alpha(const FluidState& s) const {
    SpectralField n = s.n.frequency();
    const double mean = n[0].real();
    SpectralField a = jb_over_abs_.apply(n);
    SpectralField div(grid_, Representation::frequency, true);
    for (int j = 0; j < 3; ++j) div += partial_[j].apply(s.u[j]);
    inv_abs_.apply_in_place(div);
    a.axpy(cplx{0.0, 1.0}, div);
    a.set_real(false);
    return {a, mean, s.time};
  }

  FluidState from_alpha(const AlphaState& a) const {
    const SpectralField al = a.alpha.frequency();
    SpectralField n = abs_over_jb_.apply(al.real_part());
    n[0] = a.mean_n;
    const SpectralField im = al.imag_part();
    FluidState s{n, {im, im, im}, a.time};
    for (int j = 0; j < 3; ++j) {
      s.u[j] = riesz_[j].apply(im);
      s.u[j] *= -1.0;
    }
    return s;
  }

  /// Tendencies d/dt (rho - 1, u) of the fluid system.
  FluidTendency rhs_fluid(const FluidState& s) const {
    SpectralField n_lin = s.n.frequency();
    const double mean = n_lin[0].real();
    n_lin[0] = 0.0;
    const std::array<SpectralField, 3> u_lin{s.u[0].frequency(), s.u[1].frequency(), s.u[2].frequency()};

    SpectralField nt = n_lin;
    nt.dealias();
    std::array<SpectralField, 3> uh = u_lin;
    for (auto& c : uh) c.dealias();
    SpectralField n_phys = nt.physical();
    check_density(n_lin.physical(), mean);
    std::array<SpectralField, 3> u_phys{uh[0].physical(), uh[1].physical(), uh[2].physical()};

    // Continuity: dn/dt = -div((1 + n~) u).
    SpectralField dn(grid_, Representation::frequency, true);
    for (int j = 0; j < 3; ++j) {
      SpectralField flux = product(n_phys, u_phys[j]);
      flux += u_lin[j];
      dn -= partial_[j].apply(flux);
    }

    // Momentum: du/dt = -u.grad u - grad n~ + grad Phi, Delta Phi = n~.
    SpectralField potential_minus_n = n_lin;
    for (std::size_t i = 1; i < grid_.size(); ++i) {
      const Vec3 k = grid_.frequency(i);
      potential_minus_n[i] *= -(1.0 / dot(k, k) + 1.0);
    }
    std::array<SpectralField, 3> du{potential_minus_n, potential_minus_n, potential_minus_n};
    for (int j = 0; j < 3; ++j) {
      du[j] = partial_[j].apply(potential_minus_n);
      SpectralField conv(grid_, Representation::physical, true);
      for (int k = 0; k < 3; ++k) {
        SpectralField d = partial_[k].apply(uh[j]).to_physical();
        for (std::size_t i = 0; i < grid_.size(); ++i) conv[i] += u_phys[k][i] * d[i];
      }
      conv.to_frequency().dealias();
      du[j] -= conv;
    }
    return {dn, du};
  }

  /// Quadratic part of the alpha equation:
  ///  -(i/4) sum_j R_j<D>[ (|D|/<D>)(a + conj a) . R_j(a - conj a) ]
  ///  -(i/8) sum_j |D|[ R_j(a - conj a) . R_j(a - conj a) ].
  SpectralField quadratic(const SpectralField& alpha, double mean_n = 0.0) const {
    SpectralField a = alpha.frequency();
    a.dealias();
    const SpectralField ac = a.conjugate();
    SpectralField sum = a + ac;
    SpectralField diff = a - ac;
    SpectralField x = abs_over_jb_.apply(sum);
    x.set_real(false);
    x.to_physical();
    // x = 2 (rho - 1 - mean) in physical space.
    check_density_from_twice(x, mean_n);

    std::array<SpectralField, 3> y{diff, diff, diff};
    for (int j = 0; j < 3; ++j) {
      y[j] = riesz_[j].apply(diff);
      y[j].set_real(false);
      y[j].to_physical();
    }
    SpectralField out(grid_, Representation::frequency, false);
    const cplx c1{0.0, -0.25}, c2{0.0, -0.125};
    for (int j = 0; j < 3; ++j) {
      SpectralField p = product(x, y[j]);
      riesz_jb_[j].apply_in_place(p);
      out.axpy(c1, p);
    }
    SpectralField sq(grid_, Representation::physical, false);
    for (int j = 0; j < 3; ++j) {
      for (std::size_t i = 0; i < grid_.size(); ++i) sq[i] += y[j][i] * y[j][i];
    }
    sq.to_frequency().dealias();
    abs_.apply_in_place(sq);
    out.axpy(c2, sq);
    return out;
  }

  /// d alpha / dt = i<D> alpha + quadratic(alpha).
  SpectralField rhs_alpha(const AlphaState& s, bool nonlinear = true) const {
    SpectralField out = i_jb_.apply(s.alpha);
    out.set_real(false);
    if (nonlinear) out += quadratic(s.alpha, s.mean_n);
    return out;
  }

  const SymbolTable& riesz(int j) const { return riesz_[j]; }

 private:
  // Dealiased product of two physical fields, returned in frequency space.
  SpectralField product(const SpectralField& a, const SpectralField& b) const {
    SpectralField p(grid_, Representation::physical, a.is_real() && b.is_real());
    for (std::size_t i = 0; i < grid_.size(); ++i) p[i] = a[i] * b[i];
    p.to_frequency().dealias();
    return p;
  }

  void check_density(const SpectralField& n_phys, double mean) const {
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      const double rho = 1.0 + mean + n_phys[i].real();
      if (!(rho > 0.0)) throw BlowUp("density is non-positive or non-finite");
    }
  }

  void check_density_from_twice(const SpectralField& x, double mean) const {
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      const double rho = 1.0 + mean + 0.5 * x[i].real();
      if (!(rho > 0.0) || !std::isfinite(x[i].imag())) throw BlowUp("density is non-positive or non-finite");
    }
  }

  Grid3 grid_;
  SymbolTable abs_over_jb_, jb_over_abs_, abs_, inv_abs_, i_jb_;
  std::array<SymbolTable, 3> riesz_, riesz_jb_, partial_;
};

inline AlphaState to_alpha(const FluidState& s) { return EulerPoissonModel(s.grid()).to_alpha(s); }
inline FluidState from_alpha(const AlphaState& a) { return EulerPoissonModel(a.grid()).from_alpha(a); }

}  // namespace eplab
