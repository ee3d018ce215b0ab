#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "eplab/spectral/norms.hpp"
#include "eplab/spectral/snapshot.hpp"

using namespace eplab;

namespace {

SpectralField random_real(const Grid3& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  SpectralField f(g, Representation::physical, true);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = d(rng);
  f.to_frequency().zero_nyquist();
  return f;
}

// Forward transform by the defining sum, normalized by n^3.
std::vector<cplx> dft_oracle(const Grid3& g, const std::vector<cplx>& x) {
  const std::size_t n = g.n();
  std::vector<cplx> out(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) {
    const auto ka = g.unravel(a);
    cplx acc{};
    for (std::size_t b = 0; b < g.size(); ++b) {
      const auto xb = g.unravel(b);
      const double ph = -2.0 * std::numbers::pi *
                        static_cast<double>(ka[0] * xb[0] + ka[1] * xb[1] + ka[2] * xb[2]) / static_cast<double>(n);
      acc += x[b] * std::polar(1.0, ph);
    }
    out[a] = acc / static_cast<double>(g.size());
  }
  return out;
}

}  // namespace

TEST(Grid, RejectsBadDimensions) {
  EXPECT_THROW(Grid3(12, 1.0), InvalidArgument);
  EXPECT_THROW(Grid3(4, 1.0), InvalidArgument);
  EXPECT_THROW(Grid3(16, 0.0), InvalidArgument);
  EXPECT_NO_THROW(Grid3(16, 1.0));
}

TEST(Grid, DealiasBandCount) {
  for (std::size_t n : {8u, 16u, 32u}) {
    const Grid3 g(n, 1.0);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < g.size(); ++i) kept += g.in_dealias_band(i) ? 1 : 0;
    const std::size_t side = 2 * (n / 3) + 1;
    EXPECT_EQ(kept, side * side * side);
  }
}

TEST(Fft, MatchesDefiningSum) {
  const Grid3 g(8, 3.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> d;
  std::vector<cplx> x(g.size());
  for (auto& v : x) v = {d(rng), d(rng)};
  SpectralField f(g, x, Representation::physical);
  f.to_frequency();
  const auto want = dft_oracle(g, x);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(std::abs(f[i] - want[i]), 0.0, 1e-13);
}

TEST(Fft, RoundTrip) {
  const Grid3 g(16, 5.0);
  const SpectralField f = random_real(g, 3);
  EXPECT_LT(relative_l2_difference(f.physical().frequency(), f), 1e-14);
}

TEST(Fft, ConstantMapsToUnitZeroMode) {
  const Grid3 g(16, 2.0);
  SpectralField f = SpectralField::from_function(g, [](const Vec3&) { return 1.0; });
  f.to_frequency();
  EXPECT_NEAR(f[0].real(), 1.0, 1e-15);
  double rest = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) rest = std::max(rest, std::abs(f[i]));
  EXPECT_LT(rest, 1e-15);
}

TEST(Multiplier, DerivativeOfSine) {
  const double L = 2.0 * std::numbers::pi * 1.5;
  const Grid3 g(16, L);
  const double k = 3.0 * g.dk();
  const SpectralField f = SpectralField::from_function(g, [&](const Vec3& x) { return std::sin(k * x[1]); });
  const SpectralField d = apply_multiplier(f, mult::partial(1)).physical();
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(d[i].real(), k * std::cos(k * g.position(i)[1]), 1e-12);
}

TEST(Multiplier, NyquistAlwaysZero) {
  const Grid3 g(8, 1.0);
  SpectralField f(g, Representation::frequency);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = 1.0;
  const SpectralField out = apply_multiplier(f, mult::identity());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.is_nyquist(i)) {
      EXPECT_EQ(out[i], cplx{});
    }
  }
}

TEST(Multiplier, RieszIdentityAbsGrad) {
  // |D| = -sum_j R_j d_j.
  const Grid3 g(16, 7.0);
  const SpectralField f = random_real(g, 11);
  SpectralField rhs(g, Representation::frequency, true);
  for (int j = 0; j < 3; ++j) rhs -= apply_multiplier(apply_multiplier(f, mult::partial(j)), mult::riesz(j));
  EXPECT_LT(relative_l2_difference(rhs, apply_multiplier(f, mult::abs_grad())), 1e-13);
}

TEST(Multiplier, KleinGordonFlowIsUnitary) {
  const Grid3 g(16, 9.0);
  const SpectralField f = random_real(g, 2);
  for (double s : {0.0, 2.0, 9.0}) {
    EXPECT_NEAR(sobolev_h_norm(apply_multiplier(f, mult::kg_flow(3.7)), s), sobolev_h_norm(f, s),
                1e-12 * sobolev_h_norm(f, s));
  }
}

TEST(Cutoff, ShapeOfChi) {
  EXPECT_EQ(CutoffChi::value(0.0), 1.0);
  EXPECT_EQ(CutoffChi::value(1.0), 1.0);
  EXPECT_EQ(CutoffChi::value(2.0), 0.0);
  EXPECT_NEAR(CutoffChi::value(1.5), 0.5, 1e-15);
  double prev = 1.0;
  for (double r = 1.0; r <= 2.0; r += 0.01) {
    EXPECT_LE(CutoffChi::value(r), prev + 1e-15);
    prev = CutoffChi::value(r);
  }
}

TEST(LittlewoodPaley, PartitionReproducesBandLimitedField) {
  const Grid3 g(16, 2.0 * std::numbers::pi);
  SpectralField f = random_real(g, 4);
  f.dealias();
  const DyadicBands bands = DyadicBands::for_grid(g);
  SpectralField sum = lp_project(f, Band::low(bands.n_min));
  for (double n : bands.shells()) sum += lp_project(f, Band::shell(n));
  EXPECT_LT(relative_l2_difference(sum, f), 1e-14);
}

TEST(LittlewoodPaley, TelescopingFromOne) {
  // P_{<=1} + sum_{N>=1} P_N = chi(./2Nmax) pointwise.
  for (double k : {0.0, 0.5, 1.3, 2.7, 6.1, 13.0, 40.0}) {
    double s = Band::low(1.0).symbol(k);
    for (double n = 1.0; n <= 64.0; n *= 2.0) s += Band::shell(n).symbol(k);
    EXPECT_NEAR(s, CutoffChi::value(k / 128.0), 1e-15);
  }
}

TEST(Norms, LebesgueOfConstant) {
  const Grid3 g(8, 3.0);
  const SpectralField f = SpectralField::from_function(g, [](const Vec3&) { return 2.0; });
  for (double p : {1.0, 2.0, 3.5, 10.0}) EXPECT_NEAR(lebesgue_norm(f, p), 2.0 * std::pow(27.0, 1.0 / p), 1e-12);
  EXPECT_NEAR(lebesgue_norm(f, kInf), 2.0, 1e-15);
  EXPECT_THROW(lebesgue_norm(f, 0.5), InvalidArgument);
}

TEST(Norms, PlancherelMatchesQuadrature) {
  const Grid3 g(16, 4.0);
  const SpectralField f = random_real(g, 8);
  EXPECT_NEAR(plancherel_norm(f), lebesgue_norm(f, 2.0), 1e-12 * plancherel_norm(f));
  EXPECT_NEAR(sobolev_h_norm(f, 0.0), lebesgue_norm(f, 2.0), 1e-12 * plancherel_norm(f));
}

TEST(Norms, SobolevOfSingleMode) {
  const double L = 6.0;
  const Grid3 g(16, L);
  const double k = 2.0 * g.dk();
  const SpectralField f = SpectralField::from_function(g, [&](const Vec3& x) { return std::cos(k * x[0]); });
  // ||cos||_{L^2}^2 = L^3 / 2 and every mode sits at |xi| = k.
  for (double s : {0.0, 1.0, 4.5}) {
    EXPECT_NEAR(sobolev_h_norm(f, s), std::pow(1.0 + k * k, 0.5 * s) * std::sqrt(L * L * L / 2.0), 1e-10);
  }
}

TEST(Norms, BesovHomogeneousAndTermwise) {
  const Grid3 g(16, 2.0 * std::numbers::pi);
  const SpectralField f = random_real(g, 21);
  const NormSpec::Besov b{2.0, 10.0, 2.0};
  const auto terms = besov_terms(f, b);
  double acc = 0.0;
  for (double t : terms) acc += t * t;
  EXPECT_NEAR(besov_norm(f, b), std::sqrt(acc), 1e-12 * std::sqrt(acc));
  EXPECT_NEAR(besov_norm(3.0 * f, b), 3.0 * besov_norm(f, b), 1e-12 * besov_norm(f, b));
  EXPECT_EQ(besov_norm(SpectralField::zeros(g), b), 0.0);
}

TEST(Snapshot, RoundTripIsBitwise) {
  const Grid3 g(8, 1.25);
  SpectralField f = random_real(g, 1);
  f.set_real(false);
  std::stringstream ss;
  snapshot::write(ss, f, 3.5);
  const auto s = snapshot::read(ss);
  EXPECT_EQ(s.time, 3.5);
  EXPECT_TRUE(s.field.grid() == g);
  EXPECT_EQ(s.field.representation(), f.representation());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(s.field[i], f[i]);
}

TEST(Snapshot, RejectsBadMagic) {
  std::stringstream ss("XXXX0000000000000000");
  EXPECT_THROW(snapshot::read(ss), Error);
}
