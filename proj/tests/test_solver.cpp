#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eplab/solver/experiment.hpp"

using namespace eplab;

namespace {

PerturbationParams small_gaussian(double delta = 1e-3, double width = 1.0) {
  PerturbationParams p;
  p.delta = delta;
  p.width = width;
  return p;
}

// Random irrotational state: n and u = grad psi from smooth random fields.
FluidState random_state(const Grid3& g, unsigned seed, double amp) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  auto smooth = [&] {
    SpectralField f(g, Representation::physical, true);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = d(rng);
    f.to_frequency().dealias();
    for (std::size_t i = 0; i < g.size(); ++i) f[i] *= std::exp(-0.5 * dot(g.frequency(i), g.frequency(i)));
    return f;
  };
  SpectralField n = smooth(), psi = smooth();
  n *= amp / std::max(1e-300, n.physical().max_abs());
  psi *= amp / std::max(1e-300, psi.physical().max_abs());
  FluidState s{n, {psi, psi, psi}, 0.0};
  for (int j = 0; j < 3; ++j) s.u[j] = apply_multiplier(psi, mult::partial(j));
  return s;
}

}  // namespace

TEST(Init, ZeroAmplitudeGivesEquilibrium) {
  const Grid3 g(16, 32.0);
  const FluidState s = init_perturbation(g, small_gaussian(0.0));
  EXPECT_EQ(s.n.max_abs(), 0.0);
  for (const auto& c : s.u) EXPECT_EQ(c.max_abs(), 0.0);
}

TEST(Init, PreconditionsNamed) {
  const Grid3 g(16, 32.0);
  try {
    init_perturbation(g, small_gaussian(0.1));
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("amplitude-too-large"), std::string::npos);
  }
  try {
    init_perturbation(g, small_gaussian(1e-3, 5.0));
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("width-vs-box"), std::string::npos);
  }
}

TEST(Init, NeutralRemovesMean) {
  const Grid3 g(16, 32.0);
  auto p = small_gaussian();
  p.neutral = true;
  EXPECT_EQ(init_perturbation(g, p).mean_density(), 0.0);
  p.neutral = false;
  EXPECT_GT(init_perturbation(g, p).mean_density(), 0.0);
}

TEST(Alpha, RoundTripOnIrrotationalData) {
  const Grid3 g(16, 16.0);
  const FluidState s = random_state(g, 1, 1e-2);
  const EulerPoissonModel m(g);
  const FluidState back = m.from_alpha(m.to_alpha(s));
  EXPECT_LT(relative_l2_difference(back.n, s.n), 1e-13);
  for (int j = 0; j < 3; ++j) EXPECT_LT(relative_l2_difference(back.u[j], s.u[j]), 1e-13);
}

TEST(Alpha, RhsConsistencyWithFluid) {
  const Grid3 g(16, 16.0);
  const EulerPoissonModel m(g);
  for (unsigned seed = 0; seed < 10; ++seed) {
    const FluidState s = random_state(g, 100 + seed, 1e-2);
    const FluidTendency t = m.rhs_fluid(s);
    const AlphaState via_fluid = m.to_alpha({t.dn, t.du, 0.0});
    const SpectralField direct = m.rhs_alpha(m.to_alpha(s));
    EXPECT_LT(relative_l2_difference(via_fluid.alpha, direct), 1e-8) << seed;
  }
}

TEST(Alpha, BlowUpOnNegativeDensity) {
  const Grid3 g(16, 16.0);
  const EulerPoissonModel m(g);
  const FluidState s = random_state(g, 3, 2.0);
  EXPECT_THROW(m.rhs_alpha(m.to_alpha(s)), BlowUp);
}

TEST(Runs, ZeroDataZeroSeries) {
  RunConfig c;
  c.n = 16;
  c.box_length = 32.0;
  c.data = small_gaussian(0.0);
  c.dt = 0.1;
  c.t_end = 1.0;
  c.record_every = 0.5;
  const RunResult r = run_experiment(c);
  EXPECT_EQ(r.series.get("rho_linf").size(), 3u);
  for (const auto& rec : r.series.records()) EXPECT_EQ(rec.value, 0.0) << rec.name;
}

TEST(Runs, LinearRunIsIsometric) {
  RunConfig c;
  c.n = 16;
  c.box_length = 32.0;
  c.data = small_gaussian(1e-2, 1.5);
  c.dt = 0.1;
  c.t_end = 4.0;
  c.record_every = 1.0;
  c.nonlinear = false;
  const RunResult r = run_experiment(c);
  const auto& s = r.series.get("alpha_hn");
  for (auto [t, v] : s) EXPECT_NEAR(v, s.front().second, 1e-10 * s.front().second) << t;
}

TEST(Runs, HorizonEnforced) {
  RunConfig c;
  c.n = 16;
  c.box_length = 16.0;
  c.t_end = 6.0;
  EXPECT_THROW(validate(c), HorizonExceeded);
  c.enforce_horizon = false;
  EXPECT_NO_THROW(validate(c));
}

TEST(Runs, ChargeIsConstant) {
  RunConfig c;
  c.n = 16;
  c.box_length = 32.0;
  c.dt = 0.1;
  c.t_end = 2.0;
  c.record_every = 0.5;
  const RunResult r = run_experiment(c);
  const auto& q = r.series.get("charge");
  for (auto [t, v] : q) EXPECT_EQ(v, q.front().second);
  // Q~ is the zero-mode amplitude times L^3.
  const Grid3 g(16, 32.0);
  const FluidState s0 = init_perturbation(g, c.data);
  EXPECT_NEAR(q.front().second, s0.n.frequency()[0].real() * g.volume(), 1e-15);
}

TEST(Runs, FluidAndAlphaRoutesAgree) {
  const Grid3 g(16, 32.0);
  const FluidState s0 = init_perturbation(g, small_gaussian(1e-3, 1.5));
  const FluidState sf = simulate_fluid(s0, 0.01, 0.5);
  const EulerPoissonModel m(g);
  const AlphaState a = simulate_alpha(m.to_alpha(s0), Scheme::exponential, 0.01, 0.5);
  EXPECT_LT(relative_l2_difference(m.to_alpha(sf).alpha, a.alpha), 1e-6);
}

TEST(Runs, MassAndIrrotationality) {
  const Grid3 g(16, 32.0);
  const FluidState s0 = init_perturbation(g, small_gaussian(1e-2, 1.5));
  const FluidState s = simulate_fluid(s0, 0.02, 1.0);
  EXPECT_NEAR(s.mean_density(), s0.mean_density(), 1e-10);
  EXPECT_LT(curl_norm(s), 1e-9);
}

TEST(Runs, LawsonAndRk4Converge) {
  const Grid3 g(16, 32.0);
  const EulerPoissonModel m(g);
  const AlphaState a0 = m.to_alpha(init_perturbation(g, small_gaussian(1e-2, 1.5)));
  const AlphaState ref = simulate_alpha(a0, Scheme::rk4, 0.002, 0.5);
  const AlphaState lw = simulate_alpha(a0, Scheme::exponential, 0.05, 0.5);
  EXPECT_LT(relative_l2_difference(lw.alpha, ref.alpha), 1e-6);
}

TEST(Energy, EquilibriumIsZero) {
  const Grid3 g(8, 8.0);
  EXPECT_EQ(energy_en(FluidState::equilibrium(g), 4), 0.0);
}

TEST(Energy, UniformDensityCollapsesToVelocityDerivatives) {
  const Grid3 g(16, 12.0);
  FluidState s = random_state(g, 9, 1e-2);
  s.n = SpectralField::zeros(g);
  const int order = 2;
  double want = 0.0;
  for (int a = 0; a <= order; ++a) {
    for (int b = 0; a + b <= order; ++b) {
      for (int c = 0; a + b + c <= order; ++c) {
        for (int j = 0; j < 3; ++j) {
          SpectralField d = s.u[j];
          for (int q = 0; q < a; ++q) d = apply_multiplier(d, mult::partial(0));
          for (int q = 0; q < b; ++q) d = apply_multiplier(d, mult::partial(1));
          for (int q = 0; q < c; ++q) d = apply_multiplier(d, mult::partial(2));
          want += std::pow(lebesgue_norm(d, 2.0), 2);
        }
      }
    }
  }
  EXPECT_NEAR(energy_en(s, order), want, 1e-10 * want);
}

TEST(Series, CsvIsRoundTripExact) {
  DecaySeries s;
  s.add(0.0, "x", 0.1);
  s.add(0.5, "x", 1.0 / 3.0);
  EXPECT_THROW(s.add(0.5, "x", 1.0), InvalidArgument);
  std::ostringstream os;
  s.write_csv(os);
  EXPECT_EQ(os.str(), "time,name,value\n0,x,0.10000000000000001\n0.5,x,0.33333333333333331\n");
}
