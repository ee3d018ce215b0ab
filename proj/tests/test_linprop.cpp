#include <gtest/gtest.h>

#include <cmath>

#include "eplab/linprop/decay.hpp"
#include "eplab/spectral/norms.hpp"

using namespace eplab;

TEST(Radial, GaussianAtTimeZero) {
  const double w = 1.3;
  const auto prof = RadialProfile::gaussian(w);
  for (double r : {0.0, 0.5, 1.0, 2.5, 4.0}) {
    EXPECT_NEAR(kg_propagate_radial(prof, 0.0, r).real(), std::exp(-0.5 * r * r / (w * w)), 1e-10) << r;
  }
}

TEST(Radial, QuadratureAndFftRoutesAgree) {
  const auto prof = RadialProfile::gaussian(1.0);
  for (double t : {0.0, 3.0, 20.0}) {
    const RadialField f = kg_radial_field(prof, t);
    for (std::size_t m : {0u, 7u, 40u, 160u}) {
      if (m >= f.u.size()) continue;
      const auto q = kg_propagate_radial(prof, t, f.radius(m));
      EXPECT_NEAR(std::abs(f.u[m] - q), 0.0, 1e-8) << "t=" << t << " r=" << f.radius(m);
    }
  }
}

TEST(Radial, L2Conserved) {
  const auto prof = RadialProfile::gaussian(1.0);
  const double l2 = radial_plancherel(prof);
  // ||exp(-r^2/2)||_{L^2(R^3)} = pi^{3/4}.
  EXPECT_NEAR(l2, std::pow(std::numbers::pi, 0.75), 1e-12);
  for (double t : {0.0, 10.0, 100.0}) {
    EXPECT_NEAR(radial_lp_norm(kg_radial_field(prof, t), 2.0), l2, 1e-8 * l2) << t;
  }
}

TEST(Radial, AgreesWithGridPropagator) {
  const double w = 1.5, L = 48.0, t = 5.0;
  const Grid3 g(64, L);
  const Vec3 c{L / 2, L / 2, L / 2};
  SpectralField f = SpectralField::from_function(g, [&](const Vec3& x) {
    const Vec3 d = x - c;
    return std::exp(-0.5 * dot(d, d) / (w * w));
  });
  const SpectralField u = apply_multiplier(f, mult::kg_flow(t)).physical();
  const auto prof = RadialProfile::gaussian(w);
  const double scale = std::abs(kg_propagate_radial(prof, t, 0.0));
  for (std::size_t m : {0u, 3u, 8u, 15u}) {
    const std::size_t idx = g.index(32 + m, 32, 32);
    const auto want = kg_propagate_radial(prof, t, static_cast<double>(m) * g.dx());
    EXPECT_LT(std::abs(u[idx] - want), 1e-6 * scale) << m;
  }
}

TEST(Fit, ExactPowerLaw) {
  std::vector<std::pair<double, double>> pts;
  for (double t : log_spaced(10.0, 200.0, 20)) pts.emplace_back(t, 3.0 * std::pow(1.0 + t, -1.2));
  const FitResult r = fit_decay_exponent(pts);
  EXPECT_NEAR(r.slope, -1.2, 1e-12);
  EXPECT_NEAR(r.intercept, std::log(3.0), 1e-10);
  EXPECT_EQ(r.samples, 20u);
}

TEST(Fit, SlopeInvariantUnderRescaling) {
  std::vector<std::pair<double, double>> a, b;
  for (double t : log_spaced(10.0, 200.0, 15)) {
    const double v = std::pow(1.0 + t, -0.7) * (1.0 + 0.1 * std::sin(t));
    a.emplace_back(t, v);
    b.emplace_back(t, 42.0 * v);
  }
  EXPECT_NEAR(fit_decay_exponent(a).slope, fit_decay_exponent(b).slope, 1e-12);
}

TEST(Fit, NeedsEightSamples) {
  std::vector<std::pair<double, double>> pts;
  for (double t : log_spaced(10.0, 200.0, 7)) pts.emplace_back(t, 1.0 / t);
  EXPECT_THROW(fit_decay_exponent(pts), InvalidArgument);
}

TEST(BdChi, PlainTwoIsConstant) {
  const auto density = RadialProfile::gaussian(1.0);
  const double q = radial_charge_q(density);
  ASSERT_GT(q, 0.0);
  const auto rep = verify_bdchi(density.charged_low(), q, {1.0, 10.0, 100.0}, {2.0}, {});
  ASSERT_EQ(rep.rows.size(), 3u);
  for (const auto& r : rep.rows) {
    EXPECT_NEAR(r.norm, rep.rows.front().norm, 1e-6 * rep.rows.front().norm);
    EXPECT_EQ(r.ratio, r.norm / q);
  }
}

TEST(BdChi, RejectsExponentsOutsideRange) {
  const auto chi = RadialProfile::gaussian(1.0).charged_low();
  EXPECT_THROW(verify_bdchi(chi, 1.0, {1.0}, {3.0}, {}), InvalidArgument);
  EXPECT_THROW(verify_bdchi(chi, 1.0, {1.0}, {}, {INFINITY}), InvalidArgument);
  EXPECT_THROW(verify_bdchi(chi, 0.0, {1.0}, {2.5}, {}), InvalidArgument);
}
