#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "eplab/solver/model.hpp"

namespace eplab {

enum class Scheme { exponential, rk4 };

inline Scheme parse_scheme(const std::string& s) {
  if (s == "exponential" || s == "exp") return Scheme::exponential;
  if (s == "rk4") return Scheme::rk4;
  throw InvalidArgument("unknown scheme '" + s + "'");
}

/// Time stepping of the alpha equation.
///
/// `exponential`: Lawson RK4 in the interaction picture, i.e. classical RK4
/// on v = e^{-it<D>} alpha with the linear flow applied exactly. `rk4`:
/// classical RK4 on the full right-hand side.
class AlphaStepper {
 public:
  AlphaStepper(const EulerPoissonModel& model, Scheme scheme, bool nonlinear = true)
      : model_(model), scheme_(scheme), nonlinear_(nonlinear) {}

  void step(AlphaState& s, double dt) {
    if (scheme_ == Scheme::rk4) step_rk4(s, dt);
    else step_lawson(s, dt);
    check_finite(s.alpha);
  }

  Scheme scheme() const { return scheme_; }

 private:
  SpectralField nonlinear_term(const SpectralField& a, double mean) const {
    if (!nonlinear_) return SpectralField(a.grid(), Representation::frequency, false);
    return model_.quadratic(a, mean);
  }

  void ensure_tables(double dt) {
    if (cached_dt_ && *cached_dt_ == dt) return;
    half_.emplace(model_.grid(), mult::kg_flow(0.5 * dt));
    full_.emplace(model_.grid(), mult::kg_flow(dt));
    cached_dt_ = dt;
  }

  void step_lawson(AlphaState& s, double dt) {
    ensure_tables(dt);
    const SpectralField a0 = s.alpha.frequency();
    const double m = s.mean_n;
    const SpectralField k1 = nonlinear_term(a0, m);

    SpectralField a1 = a0;
    a1.axpy(0.5 * dt, k1);
    half_->apply_in_place(a1);
    const SpectralField k2 = nonlinear_term(a1, m);

    SpectralField a2 = half_->apply(a0);
    a2.axpy(0.5 * dt, k2);
    const SpectralField k3 = nonlinear_term(a2, m);

    SpectralField a3 = a0;
    SpectralField k3h = half_->apply(k3);
    a3 = full_->apply(a0);
    a3.axpy(dt, k3h);
    const SpectralField k4 = nonlinear_term(a3, m);

    // alpha_{n+1} = E(h)[a0 + h/6 k1] + E(h/2)[h/3 (k2 + k3)] + h/6 k4.
    SpectralField out = a0;
    out.axpy(dt / 6.0, k1);
    full_->apply_in_place(out);
    SpectralField mid = k2;
    mid += k3;
    half_->apply_in_place(mid);
    out.axpy(dt / 3.0, mid);
    out.axpy(dt / 6.0, k4);
    out.set_real(false);
    s.alpha = std::move(out);
    s.time += dt;
  }

  void step_rk4(AlphaState& s, double dt) {
    auto f = [&](const SpectralField& a) { return model_.rhs_alpha({a, s.mean_n, 0.0}, nonlinear_); };
    const SpectralField a0 = s.alpha.frequency();
    const SpectralField k1 = f(a0);
    SpectralField t = a0; t.axpy(0.5 * dt, k1);
    const SpectralField k2 = f(t);
    t = a0; t.axpy(0.5 * dt, k2);
    const SpectralField k3 = f(t);
    t = a0; t.axpy(dt, k3);
    const SpectralField k4 = f(t);
    SpectralField out = a0;
    out.axpy(dt / 6.0, k1);
    out.axpy(dt / 3.0, k2);
    out.axpy(dt / 3.0, k3);
    out.axpy(dt / 6.0, k4);
    s.alpha = std::move(out);
    s.time += dt;
  }

  static void check_finite(const SpectralField& a) {
    for (const auto& v : a.values()) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw BlowUp("alpha became non-finite");
    }
  }

  const EulerPoissonModel& model_;
  Scheme scheme_;
  bool nonlinear_;
  std::optional<double> cached_dt_;
  std::optional<SymbolTable> half_, full_;
};

/// Classical RK4 on the fluid variables; used to cross-validate the alpha route.
class FluidStepper {
 public:
  explicit FluidStepper(const EulerPoissonModel& model) : model_(model) {}

  void step(FluidState& s, double dt) const {
    s.n.to_frequency();
    for (auto& c : s.u) c.to_frequency();
    const FluidState s0 = s;
    auto shifted = [&](const FluidTendency& k, double h) {
      FluidState t = s0;
      t.n.axpy(h, k.dn);
      for (int j = 0; j < 3; ++j) t.u[j].axpy(h, k.du[j]);
      return t;
    };
    const FluidTendency k1 = model_.rhs_fluid(s0);
    const FluidTendency k2 = model_.rhs_fluid(shifted(k1, 0.5 * dt));
    const FluidTendency k3 = model_.rhs_fluid(shifted(k2, 0.5 * dt));
    const FluidTendency k4 = model_.rhs_fluid(shifted(k3, dt));
    const double w[4] = {dt / 6.0, dt / 3.0, dt / 3.0, dt / 6.0};
    const FluidTendency* ks[4] = {&k1, &k2, &k3, &k4};
    for (int q = 0; q < 4; ++q) {
      s.n.axpy(w[q], ks[q]->dn);
      for (int j = 0; j < 3; ++j) s.u[j].axpy(w[q], ks[q]->du[j]);
    }
    s.time += dt;
  }

 private:
  const EulerPoissonModel& model_;
};

}  // namespace eplab
