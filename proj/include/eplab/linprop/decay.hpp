#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "eplab/linprop/fit.hpp"
#include "eplab/linprop/radial.hpp"

namespace eplab {

/// Free Klein-Gordon decay of a radial profile on R^3: ||e^{it<D>} f||_{B^0_{p,2}}
/// and ||e^{it<D>} f||_{L^2} at the given times, with the fitted Besov exponent.
struct LinearDecayReport {
  DecaySeries series;
  FitResult fit;
  double l2_initial = 0.0;
  double l2_max_drift = 0.0;
  double predicted_slope = 0.0;
};

inline LinearDecayReport linear_decay(const RadialProfile& prof, const std::vector<double>& times, double p,
                                      FitWindow window = {}) {
  LinearDecayReport rep;
  rep.l2_initial = radial_plancherel(prof);
  rep.predicted_slope = 3.0 / p - 1.5;
  for (double t : times) {
    rep.series.add(t, "besov", radial_besov_norm(prof, t, 0.0, p, 2.0));
    const double l2 = radial_lp_norm(kg_radial_field(prof, t), 2.0);
    rep.series.add(t, "l2", l2);
    rep.l2_max_drift = std::max(rep.l2_max_drift, std::abs(l2 - rep.l2_initial) / rep.l2_initial);
  }
  rep.fit = fit_decay_exponent(rep.series, "besov", window);
  return rep;
}

/// Ratios norm (1+t)^{3/2 (1 - 2/p)} / Q for the free flow of the charged part,
/// undifferentiated for p in [2, 3) and for the gradient for p in [2, inf).
struct BdChiRow {
  double t;
  double p;
  bool gradient;
  double norm;
  double ratio;
};

struct BdChiReport {
  std::vector<BdChiRow> rows;
  double q = 0.0;
  double hn_norm = 0.0;
  double max_ratio_plain = 0.0;
  double max_ratio_gradient = 0.0;
};

inline double bdchi_rate(double p) { return 1.5 * (1.0 - 2.0 / p); }

/// Q = ||P_{<=1}(rho0 - 1)||_{L^1(R^3)} for a radial density profile.
inline double radial_charge_q(const RadialProfile& density) {
  return radial_lp_norm(kg_radial_field(density.low_part(), 0.0), 1.0);
}

inline BdChiReport verify_bdchi(const RadialProfile& chi_q, double q, const std::vector<double>& times,
                                const std::vector<double>& p_plain, const std::vector<double>& p_gradient,
                                int order = 9) {
  for (double p : p_plain) {
    if (!(p >= 2.0 && p < 3.0)) throw InvalidArgument("verify_bdchi: the undifferentiated bound needs 2 <= p < 3");
  }
  for (double p : p_gradient) {
    if (!(p >= 2.0) || std::isinf(p)) throw InvalidArgument("verify_bdchi: the gradient bound needs 2 <= p < inf");
  }
  if (!(q > 0.0)) throw InvalidArgument("verify_bdchi: Q must be positive");
  BdChiReport rep;
  rep.q = q;
  rep.hn_norm = radial_plancherel(chi_q, order);
  for (double t : times) {
    for (int form = 0; form < 2; ++form) {
      const bool grad = form == 1;
      for (double p : grad ? p_gradient : p_plain) {
        const double nrm = radial_besov_norm(chi_q, t, 0.0, p, 2.0, grad);
        const double ratio = nrm * std::pow(1.0 + t, bdchi_rate(p)) / q;
        rep.rows.push_back({t, p, grad, nrm, ratio});
        double& m = grad ? rep.max_ratio_gradient : rep.max_ratio_plain;
        m = std::max(m, ratio);
      }
    }
  }
  return rep;
}

}  // namespace eplab
