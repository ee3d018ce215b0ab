#include <gtest/gtest.h>

#include <cmath>

#include "eplab/verify/nf_identity.hpp"
#include "eplab/verify/pseudo_bounds.hpp"
#include "eplab/verify/run_checks.hpp"
#include "eplab/verify/symbol_bounds.hpp"

using namespace eplab;

namespace {

const ConjPair kPP{Sign::plus, Sign::plus};
const ConjPair kPM{Sign::plus, Sign::minus};

RunConfig tiny_run(double delta) {
  RunConfig c;
  c.n = 16;
  c.box_length = 32.0;
  c.data.delta = delta;
  c.data.width = 1.5;
  c.dt = 0.1;
  c.t_end = 4.0;
  c.record_every = 0.5;
  c.norms = RunConfig::all_norms();
  c.keep_profiles = true;
  return c;
}

}  // namespace

TEST(Phase, SpotValueMatchesClosedForm) {
  // xi1 = xi2 = (10,0,0): theta = 0, L = 10, so the ratio is |phi| <10> = 202 - sqrt(40501).
  const double r = phase_bound_ratio_at(kPP, 10.0, 10.0, 0.0);
  EXPECT_NEAR(r, 202.0 - std::sqrt(40501.0), 1e-11);
  EXPECT_NEAR(r, 0.7514, 1e-3);
}

TEST(Phase, DefaultLatticeStrictlyPositive) {
  for (const auto& e : ConjPair::all()) {
    const ScanReport rep = scan_phase_lower_bound(e);
    EXPECT_TRUE(rep.pass) << rep.summary();
    EXPECT_GT(rep.min, 0.0);
    ASSERT_EQ(rep.argmin.size(), 3u);
    const double again = phase_bound_ratio_at(e, rep.argmin[0], rep.argmin[1], rep.argmin[2]);
    EXPECT_NEAR(again, rep.min, 1e-10 * std::max(1.0, rep.min));
    const double again_max = phase_bound_ratio_at(e, rep.argmax[0], rep.argmax[1], rep.argmax[2]);
    EXPECT_NEAR(again_max, rep.max, 1e-10 * std::max(1.0, rep.max));
  }
}

TEST(Phase, OrientedAngleBreaksMixedSigns) {
  PhaseScanOptions opt;
  opt.oriented_angle = true;
  const ScanReport rep = scan_phase_lower_bound(kPM, opt);
  EXPECT_FALSE(rep.pass);
  EXPECT_LT(rep.min, 1e-3);
}

TEST(SymbolBounds, FiniteDifferencesOfPolynomialKernel) {
  // m(x1, x2) = x1_0^3 gives F(xi, eta) = (xi_0 - eta_0)^3.
  BilinearSymbolSpec cubic{SymbolKind::custom, std::nullopt,
                           [](const Vec3& a, const Vec3&) { return a[0] * a[0] * a[0]; }};
  const Vec3 xi{2.0, 0.5, -1.0}, eta{0.7, 1.0, 0.3};
  const double d = xi[0] - eta[0];
  EXPECT_NEAR(nf_kernel_derivative(cubic, xi, eta, 0, 1, 0, 0, 1e-3), 3.0 * d * d, 1e-5);
  EXPECT_NEAR(nf_kernel_derivative(cubic, xi, eta, 0, 2, 0, 0, 1e-3), 6.0 * d, 1e-5);
  EXPECT_NEAR(nf_kernel_derivative(cubic, xi, eta, 0, 1, 0, 2, 1e-2), 6.0, 1e-5);
  EXPECT_NEAR(nf_kernel_derivative(cubic, xi, eta, 1, 1, 0, 0, 1e-3), 0.0, 1e-9);
}

TEST(SymbolBounds, ReducedScanFiniteAndReproducible) {
  SymbolScanOptions opt;
  opt.log2_min = -2.0;
  opt.log2_max = 4.0;
  opt.log2_step = 2.0;
  opt.angles = 5;
  opt.max_order = 2;
  for (auto k : {SymbolKind::mp, SymbolKind::mt}) {
    const ScanReport rep = scan_symbol_derivative_bounds(k, kPP, opt);
    EXPECT_TRUE(rep.pass) << rep.summary();
    const auto& p = rep.argmax;
    ASSERT_EQ(p.size(), 7u);
    const SymbolSample s{p[0], p[1], p[2], int(p[3]), int(p[4]), int(p[5]), int(p[6])};
    EXPECT_NEAR(symbol_bound_ratio(BilinearSymbolSpec::normal_form(k, kPP), s, opt), rep.max, 1e-10 * rep.max);
  }
}

TEST(SymbolBounds, BoundSideScalesWithDerivativeOrder) {
  // On a collinear triad at unit scale the bound reduces to H |xi|^-a |eta|^-b.
  const Vec3 xi{0.5, 0.0, 0.0}, eta{0.25, 0.0, 0.0};
  EXPECT_NEAR(kernel_bound_rhs(xi, eta, 0, 0), 0.5, 1e-15);
  EXPECT_NEAR(kernel_bound_rhs(xi, eta, 1, 2), 0.5 / 0.5 / (0.25 * 0.25), 1e-12);
}

TEST(Holder, RatioInvariantUnderInputScaling) {
  PseudoScanOptions opt;
  const TriadSpec t{2, 2, 2, 10, 2.5, 2};
  const HolderCase hc(BilinearSymbolSpec::normal_form(SymbolKind::mt, kPM), kPM, t, opt);
  const double base = hc.ratio(0, 0);
  ASSERT_GT(base, 0.0);
  for (double la : {1e-3, 7.0}) {
    for (double lb : {0.5, 1e4}) EXPECT_NEAR(hc.ratio(0, 0, la, lb), base, 1e-12 * base);
  }
}

TEST(Holder, DisjointSupportsGiveZero) {
  PseudoScanOptions opt;
  opt.box_length = 8.0 * std::numbers::pi;
  const TriadSpec t{0.25, 2, 0.25, 10, 2.5, 2};
  const HolderCase hc(BilinearSymbolSpec::normal_form(SymbolKind::mp, kPP), kPP, t, opt);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_LT(hc.ratio(0, k), 1e-12);
}

TEST(Holder, ReductionIsPlainHolder) {
  PseudoScanOptions opt;
  opt.trials = 10;
  const ScanReport rep = check_holder_reduction({1, 1, 1, 10, 2.5, 2}, opt);
  EXPECT_TRUE(rep.pass);
  EXPECT_LE(rep.max, 1.0 + 1e-12);
}

TEST(Holder, TriadValidation) {
  EXPECT_THROW((TriadSpec{1, 1, 1, 2, 2, 2}.validate()), InvalidArgument);
  EXPECT_NO_THROW((TriadSpec{1, 1, 1, 4, 4, 2}.validate()));
  EXPECT_TRUE((TriadSpec{4, 4, 2}.admissible()));
  EXPECT_FALSE((TriadSpec{0.25, 2, 0.25}.admissible()));
}

TEST(Holder, SeededTrialsAreDeterministic) {
  PseudoScanOptions opt;
  opt.trials = 2;
  const std::vector<TriadSpec> tri{{2, 2, 2, 4, 4, 2}};
  const auto spec = BilinearSymbolSpec::normal_form(SymbolKind::mp, kPP);
  const auto a = check_holder_pseudo_product(spec, kPP, tri, opt);
  const auto b = check_holder_pseudo_product(spec, kPP, tri, opt);
  EXPECT_EQ(a.max, b.max);
  opt.seed = 2;
  EXPECT_NE(check_holder_pseudo_product(spec, kPP, tri, opt).max, a.max);
}

TEST(LhBound, RatioInvariantUnderScaling) {
  PseudoScanOptions opt;
  const LhBoundCase lc(BilinearSymbolSpec::normal_form(SymbolKind::mp, kPP), kPP, {4.0, 2.0, 0.0}, opt);
  const double base = lc.ratio(0, 0);
  ASSERT_GT(base, 0.0);
  EXPECT_NEAR(lc.ratio(0, 0, 123.0), base, 1e-12 * base);
  EXPECT_THROW((LhCase{0.5, 2.0, 1.0}.validate()), InvalidArgument);
}

TEST(ProdForm, FiniteAndGuarded) {
  PseudoScanOptions opt;
  opt.trials = 3;
  opt.threshold = 10.0;
  const ScanReport rep = check_prodform({0.0, 2.0}, opt);
  EXPECT_TRUE(rep.all_finite);
  EXPECT_GT(rep.max, 0.0);
  EXPECT_THROW(check_prodform({-1.0}, opt), InvalidArgument);
}

TEST(NormalForm, VanishesAtTimeZero) {
  RunConfig c = tiny_run(1e-3);
  c.dt = 0.01;
  const auto s = nf_sides(c, BilinearSymbolSpec::of(SymbolKind::mt), kPP, NfOperand::b, NfOperand::chi_q, 0.0, 0.01);
  EXPECT_EQ(s.residual, 0.0);
  EXPECT_EQ(s.lhs.max_abs(), 0.0);
}

TEST(NormalForm, ChargedPartAlone) {
  // With both operands chi^Q the d_s terms vanish and the identity is exact up to quadrature.
  RunConfig c = tiny_run(1e-3);
  c.dt = 0.01;
  const double r = nf_residual(c, BilinearSymbolSpec::of(SymbolKind::mp), kPM, NfOperand::chi_q, NfOperand::chi_q, 1.0, 0.01);
  EXPECT_LT(r, 1e-7);
}

TEST(NormalForm, SamplingDensityPrecondition) {
  RunConfig c = tiny_run(1e-3);
  c.dt = 0.01;
  const auto m = BilinearSymbolSpec::of(SymbolKind::mt);
  try {
    nf_residual(c, m, kPP, NfOperand::b, NfOperand::chi_q, 1.0, 0.015);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("lacks required sampling density"), std::string::npos);
  }
  EXPECT_THROW(nf_residual(c, BilinearSymbolSpec::normal_form(SymbolKind::mt, kPP), kPP, NfOperand::b,
                           NfOperand::chi_q, 1.0, 0.01),
               InvalidArgument);
}

TEST(NormalForm, SimpsonWeightsIntegrateCubics) {
  for (std::size_t n : {2u, 5u, 8u}) {
    const double h = 1.0 / static_cast<double>(n);
    const auto w = detail::simpson_weights(n, h);
    double acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j) acc += w[j] * std::pow(j * h, 3);
    EXPECT_NEAR(acc, 0.25, 1e-14) << n;
  }
}

TEST(RunChecks, ZeroDataGivesZeroRatios) {
  const RunResult r = run_experiment(tiny_run(0.0));
  const auto c = check_controlds(r.series, r.charge.q);
  EXPECT_EQ(c.high.max, 0.0);
  EXPECT_EQ(c.low.max, 0.0);
  EXPECT_TRUE(c.pass());
  const auto b = monitor_bootstrap(r, 2.0, 9.0);
  EXPECT_EQ(b.ratio.max, 0.0);
  EXPECT_TRUE(b.ratio.pass);
}

TEST(RunChecks, LinearRunHasNoTimeDerivative) {
  RunConfig c = tiny_run(1e-3);
  c.nonlinear = false;
  const RunResult r = run_experiment(c);
  const auto cd = check_controlds(r.series, r.charge.q);
  EXPECT_EQ(cd.high.max, 0.0);
  // Profiles of a linear run are constant.
  for (auto [t, v] : scattering_differences(r.profiles, 2.0)) EXPECT_LT(v, 1e-12) << t;
  // Without nonlinearity X_T is the running sup of the free-flow integrand.
  const auto b = monitor_bootstrap(r, 2.0, 9.0);
  const auto x = running_xt(r.series);
  const SpectralField beta0 = beta_of(r.initial, r.split);
  double sup = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = x[k].first;
    sup = std::max(sup, xt_components(apply_multiplier(beta0, mult::kg_flow(t)), t, 2.0, 9.0).total());
    EXPECT_NEAR(x[k].second, sup, 1e-9 * sup);
  }
  EXPECT_TRUE(b.ratio.pass);
}

TEST(RunChecks, ControlDsRejectsLargeEps) {
  DecaySeries s;
  EXPECT_THROW(check_controlds(s, 1.0, 0.02), InvalidArgument);
}

TEST(Scattering, SyntheticProfileOracle) {
  // b(t) = -(14/5)(1+t)^{-5/14} F on times 10 * 2^{j/8}, so every t has 2t stored.
  const Grid3 g(8, 4.0);
  SpectralField f = SpectralField::from_function(g, [](const Vec3& x) { return std::sin(x[0]) + 0.5; });
  f.to_frequency();
  std::vector<ProfileSample> prof;
  for (int j = 0; j <= 96; ++j) {
    const double t = 10.0 * std::exp2(j / 8.0);
    SpectralField b = f;
    b *= -2.8 * std::pow(1.0 + t, -5.0 / 14.0);
    prof.push_back({t, b});
  }
  const FitResult fit = check_scattering(prof, 2.0, {20.0, 2000.0});
  EXPECT_NEAR(fit.slope, -5.0 / 14.0, 0.02);
  try {
    check_scattering(prof, 2.0, {20.0, 22.0});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("window too short"), std::string::npos);
  }
}

TEST(RunChecks, GrowthAndEnergyBounds) {
  DecaySeries s;
  for (int k = 0; k <= 10; ++k) {
    const double t = k;
    s.add(t, "beta_weighted", 1.0 + 0.5 * t);
    s.add(t, "beta_hn", 1.0);
    s.add(t, "energy_ratio", 0.9);
  }
  const auto reps = check_run_bounds(s);
  ASSERT_EQ(reps.size(), 4u);
  EXPECT_DOUBLE_EQ(reps[0].max, 6.0);
  EXPECT_TRUE(reps[0].pass);
  EXPECT_TRUE(reps[1].pass);
  EXPECT_TRUE(reps[2].pass && reps[3].pass);
  RunBoundOptions tight;
  tight.weighted_growth = 5.0;
  EXPECT_FALSE(check_run_bounds(s, tight)[0].pass);
  EXPECT_NEAR(detail::growth_ratio(s.get("beta_weighted")), 6.0 / 3.5, 1e-15);
}
