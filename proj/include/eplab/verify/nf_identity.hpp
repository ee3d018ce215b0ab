#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "eplab/solver/experiment.hpp"
#include "eplab/symbols/pseudo_product.hpp"

namespace eplab {

/// Operand of the time-integrated pseudo-product: the profile b(s) or the
/// time-independent chi^Q.
enum class NfOperand { b, chi_q };

inline NfOperand parse_nf_operand(const std::string& s) {
  if (s == "b") return NfOperand::b;
  if (s == "chi_q" || s == "chiQ") return NfOperand::chi_q;
  throw InvalidArgument("unknown normal-form operand '" + s + "' (expected b or chi_q)");
}

/// Both sides of the integration-by-parts identity
///   I_m[c1, c2](t) = -i J(t) + i J(0) + i I_{m/phi}[d_s c1, c2](t) + i I_{m/phi}[c1, d_s c2](t),
/// J(s) = e^{-is<D>} T_{m/phi}[C^{e1} e^{is<D>} c1(s), C^{e2} e^{is<D>} c2(s)].
struct NfSides {
  SpectralField lhs;
  SpectralField rhs;
  double residual;
};

namespace detail {

/// Composite Simpson weights on `intervals` equal steps of size h; an odd
/// count closes with the 3/8 rule on the last three intervals.
inline std::vector<double> simpson_weights(std::size_t intervals, double h) {
  if (intervals < 2) throw InvalidArgument("nf identity: need at least two quadrature intervals");
  std::vector<double> w(intervals + 1, 0.0);
  const std::size_t even = intervals % 2 == 0 ? intervals : intervals - 3;
  for (std::size_t j = 0; j + 2 <= even; j += 2) {
    w[j] += h / 3.0;
    w[j + 1] += 4.0 * h / 3.0;
    w[j + 2] += h / 3.0;
  }
  if (even != intervals) {
    const double c = 3.0 * h / 8.0;
    w[even] += c;
    w[even + 1] += 3.0 * c;
    w[even + 2] += 3.0 * c;
    w[even + 3] += c;
  }
  return w;
}

// e^{is<k>} f in place.
inline void kg_rotate(SpectralField& f, const std::vector<double>& jb, double s) {
  f.to_frequency();
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= std::polar(1.0, s * jb[i]);
  f.set_real(false);
}

inline std::vector<bool> operand_support(const Grid3& g, NfOperand c) {
  return c == NfOperand::b ? full_support(g) : band_support(g, Band::low(1.0));
}

}  // namespace detail

/// Replays `run` with its own time step up to t and evaluates both sides of the
/// identity with Simpson quadrature of step quad_dt (a multiple of run.dt).
/// The residual is ||lhs - rhs|| / ||lhs|| (0 at t = 0).
inline NfSides nf_sides(const RunConfig& run, const BilinearSymbolSpec& m, const ConjPair& eps, NfOperand c1,
                        NfOperand c2, double t, double quad_dt) {
  if (!(t >= 0.0)) throw InvalidArgument("nf identity: t must be non-negative");
  if (!(quad_dt > 0.0)) throw InvalidArgument("nf identity: quad_dt must be positive");
  if (m.divisor) throw InvalidArgument("nf identity: pass the undivided symbol m");
  const double ratio = quad_dt / run.dt;
  const auto per = static_cast<std::size_t>(std::llround(ratio));
  if (per < 1 || std::abs(ratio - static_cast<double>(per)) > 1e-9 * ratio) {
    throw InvalidArgument("nf identity: run lacks required sampling density (quad_dt must be a multiple of dt)");
  }
  const double nodes_f = t / quad_dt;
  const auto intervals = static_cast<std::size_t>(std::llround(nodes_f));
  if (std::abs(nodes_f - static_cast<double>(intervals)) > 1e-9 * std::max(1.0, nodes_f)) {
    throw InvalidArgument("nf identity: t must be a multiple of quad_dt");
  }
  RunConfig cfg = run;
  cfg.t_end = t;
  validate(cfg);

  const Grid3 g(cfg.n, cfg.box_length);
  const EulerPoissonModel model(g);
  const FluidState s0 = init_perturbation(g, cfg.data);
  AlphaState a = model.to_alpha(s0);
  const BetaSplit split = BetaSplit::from_initial(a, compute_charge(s0));
  if (t == 0.0) {
    const SpectralField z(g, Representation::frequency, false);
    return {z, z, 0.0};
  }

  const DirectOptions dopt{true, 32 * 32 * 32};
  const BilinearSymbolSpec m_phi{m.kind, eps, m.custom};
  const auto s1 = detail::operand_support(g, c1), s2 = detail::operand_support(g, c2);
  const auto all = full_support(g);
  const BilinearKernel k_m(m, g, s1, s2, all, dopt);
  const BilinearKernel k_mphi(m_phi, g, s1, s2, all, dopt);
  const BilinearKernel k_d1(m_phi, g, all, s2, all, dopt);
  const BilinearKernel k_d2(m_phi, g, s1, all, all, dopt);

  std::vector<double> jb(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) jb[i] = jbracket(g.frequency(i));

  const auto w = detail::simpson_weights(intervals, quad_dt);
  SpectralField lhs(g, Representation::frequency, false);
  SpectralField dint(g, Representation::frequency, false);
  SpectralField j0(g, Representation::frequency, false), jt = j0;
  AlphaStepper stepper(model, cfg.scheme, cfg.nonlinear);
  const double h = quad_dt / static_cast<double>(per);

  for (std::size_t j = 0; j <= intervals; ++j) {
    const double s = static_cast<double>(j) * quad_dt;
    a.time = s;
    // Physical-frame quantities: e^{is<D>} c and e^{is<D>} d_s c.
    SpectralField beta = beta_of(a, split);
    SpectralField nl = cfg.nonlinear ? model.quadratic(a.alpha, a.mean_n) : SpectralField(g, Representation::frequency, false);
    nl.set_real(false);
    const SpectralField zero(g, Representation::frequency, false);
    SpectralField chi = split.chi_q;
    detail::kg_rotate(chi, jb, s);
    const SpectralField& x1 = c1 == NfOperand::b ? beta : chi;
    const SpectralField& x2 = c2 == NfOperand::b ? beta : chi;
    const SpectralField& d1 = c1 == NfOperand::b ? nl : zero;
    const SpectralField& d2 = c2 == NfOperand::b ? nl : zero;
    const SpectralField x1e = conjugated(x1, eps.first), x2e = conjugated(x2, eps.second);

    SpectralField km = k_m.apply(x1e, x2e);
    detail::kg_rotate(km, jb, -s);
    lhs.axpy(w[j], km);
    if (j == 0 || j == intervals) {
      SpectralField jj = k_mphi.apply(x1e, x2e);
      detail::kg_rotate(jj, jb, -s);
      (j == 0 ? j0 : jt) = jj;
    }
    SpectralField dd = k_d1.apply(conjugated(d1, eps.first), x2e);
    dd += k_d2.apply(x1e, conjugated(d2, eps.second));
    detail::kg_rotate(dd, jb, -s);
    dint.axpy(w[j], dd);

    if (j < intervals) {
      for (std::size_t k = 0; k < per; ++k) stepper.step(a, h);
    }
  }
  const cplx i{0.0, 1.0};
  SpectralField rhs(g, Representation::frequency, false);
  rhs.axpy(-i, jt);
  rhs.axpy(i, j0);
  rhs.axpy(i, dint);
  return {lhs, rhs, relative_l2_difference(rhs, lhs)};
}

inline double nf_residual(const RunConfig& run, const BilinearSymbolSpec& m, const ConjPair& eps, NfOperand c1,
                          NfOperand c2, double t, double quad_dt) {
  return nf_sides(run, m, eps, c1, c2, t, quad_dt).residual;
}

struct NfOrderReport {
  std::vector<double> quad_dts;
  std::vector<double> residuals;
  /// Least-squares slope of log residual against log quad_dt.
  double order = 0.0;
};

inline NfOrderReport nf_residual_order(const RunConfig& run, const BilinearSymbolSpec& m, const ConjPair& eps,
                                       NfOperand c1, NfOperand c2, double t, const std::vector<double>& quad_dts) {
  if (quad_dts.size() < 2) throw InvalidArgument("nf order: need at least two quadrature steps");
  NfOrderReport rep;
  std::vector<std::pair<double, double>> pts;
  for (double q : quad_dts) {
    const double r = nf_residual(run, m, eps, c1, c2, t, q);
    rep.quad_dts.push_back(q);
    rep.residuals.push_back(r);
    if (!(r > 0.0)) throw NumericalInstability("nf order: residual vanished; order undefined");
    pts.emplace_back(std::log(q), std::log(r));
  }
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) { mx += x; my += y; }
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  rep.order = sxy / sxx;
  return rep;
}

}  // namespace eplab
