#pragma once

#include <cmath>

#include "eplab/solver/model.hpp"

namespace eplab {

/// Charges of the initial perturbation: Q~ = int (rho0 - 1) and the
/// low-frequency surrogate Q = ||P_{<=1}(rho0 - 1)||_{L^1}.
struct Charge {
  double q;
  double q_tilde;
};

inline Charge compute_charge(const FluidState& s0) {
  const SpectralField n = s0.n.frequency();
  const double q_tilde = n[0].real() * s0.grid().volume();
  const double q = lebesgue_norm(lp_project(n, Band::low(1.0)), 1.0);
  return {q, q_tilde};
}

/// Isolation of the low-frequency charged part: chi^Q = P_{<=1} Re alpha(0)
/// and beta(t) = alpha(t) - e^{it<D>} chi^Q.
struct BetaSplit {
  SpectralField chi_q;
  double q = 0.0;
  double q_tilde = 0.0;

  static BetaSplit from_initial(const AlphaState& a0, const Charge& c) {
    const SpectralField re = a0.alpha.frequency().real_part();
    return {lp_project(re, Band::low(1.0)), c.q, c.q_tilde};
  }

  static BetaSplit from_initial(const FluidState& s0) {
    return from_initial(to_alpha(s0), compute_charge(s0));
  }

  /// e^{it<D>} chi^Q.
  SpectralField free_flow(double t) const { return apply_multiplier(chi_q, mult::kg_flow(t)); }
};

inline SpectralField beta_of(const AlphaState& a, const BetaSplit& split) {
  if (!(a.grid() == split.chi_q.grid())) throw InvalidArgument("beta_of: grid mismatch");
  SpectralField b = a.alpha.frequency();
  b -= split.free_flow(a.time);
  b.set_real(false);
  return b;
}

/// Linear profile b(t) = e^{-it<D>} beta(t).
inline SpectralField profile_of(const SpectralField& beta, double t) {
  SpectralField b = apply_multiplier(beta, mult::kg_flow(-t));
  b.set_real(false);
  return b;
}

}  // namespace eplab
