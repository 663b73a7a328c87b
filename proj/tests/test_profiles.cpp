#include <gtest/gtest.h>

#include <cmath>

#include "harvest/oracles.hpp"
#include "harvest/profiles.hpp"
#include "harvest/quadrature.hpp"

using namespace harvest;
using specfun::pi;

namespace {

// (2 pi)^{-1/2} int chi(t) e^{i w t} dt by adaptive quadrature of the pointwise profile
cplx fourier_by_quadrature(const SwitchingSpec& s, double w, double lo, double hi) {
  auto f = [&](double t) { return profiles::switching_value(s, t) * std::exp(cplx(0.0, w * t)); };
  const auto panels = static_cast<std::size_t>(std::ceil(std::abs(w) * (hi - lo) / pi)) + 1;
  const auto r = quad::integrate<cplx>(f, lo, hi, {1e-15, 1e-13, 0.0, 2000}, panels);
  return r.value / std::sqrt(2 * pi);
}

SwitchingSpec sw(SwitchingFamily f, double T = 1.0, double t0 = 0.0) {
  SwitchingSpec s;
  s.family = f;
  s.duration = T;
  s.start = t0;
  return s;
}

SmearingSpec sm(SmearingFamily f, double scale, int n) {
  SmearingSpec s;
  s.family = f;
  s.scale = scale;
  s.dimension = n;
  return s;
}

}  // namespace

TEST(Switching, TopHatFourierAtZero) {
  const auto x = profiles::switching_fourier(sw(SwitchingFamily::TopHat, 2.0), 0.0);
  EXPECT_NEAR(std::abs(x), 2.0 / std::sqrt(2 * pi), 1e-15);
}

TEST(Switching, CompactTransformsAgainstQuadrature) {
  for (auto fam : {SwitchingFamily::TopHat, SwitchingFamily::CosineBump}) {
    for (double T : {0.7, 1.0, 2.5}) {
      const auto s = sw(fam, T, 0.4);
      for (double w : {-13.0, -2 * pi / T, -1.0, 0.0, 1e-5, 0.5, 2 * pi / T, 2 * pi / T + 1e-4, 7.3, 40.0}) {
        const cplx ref = fourier_by_quadrature(s, w, s.start, s.start + T);
        EXPECT_LT(std::abs(profiles::switching_fourier(s, w) - ref), 1e-12) << int(fam) << " " << T << " " << w;
      }
    }
  }
}

TEST(Switching, RegularizedDeltaTransforms) {
  SwitchingSpec th;
  th.family = SwitchingFamily::TopHatRegDelta;
  th.regulator = 0.2;
  th.strength = 1.3;
  th.start = 0.5;
  SwitchingSpec g = th;
  g.family = SwitchingFamily::GaussianRegDelta;
  for (double w : {0.0, 1.0, 7.0, 30.0}) {
    EXPECT_LT(std::abs(profiles::switching_fourier(th, w) - fourier_by_quadrature(th, w, 0.4, 0.6)), 1e-12) << w;
    EXPECT_LT(std::abs(profiles::switching_fourier(g, w) - fourier_by_quadrature(g, w, 0.5 - 4.0, 0.5 + 4.0)), 1e-12)
        << w;
  }
}

TEST(Switching, ModulusEvenInFrequency) {
  for (auto fam : {SwitchingFamily::TopHat, SwitchingFamily::CosineBump}) {
    const auto s = sw(fam, 1.3, 0.0);
    for (double w : {0.3, 2.0, 9.0}) {
      EXPECT_NEAR(std::abs(profiles::switching_fourier(s, w)), std::abs(profiles::switching_fourier(s, -w)), 1e-15);
    }
  }
}

TEST(Switching, IdealDeltaHasNoProfile) {
  SwitchingSpec d;
  d.family = SwitchingFamily::DeltaIdeal;
  EXPECT_THROW(profiles::switching_value(d, 0.0), UnsupportedFamily);
  EXPECT_THROW(profiles::switching_fourier(d, 1.0), UnsupportedFamily);
}

TEST(Switching, Validation) {
  EXPECT_THROW(sw(SwitchingFamily::TopHat, 0.0).validate(), ConfigError);
  SwitchingSpec g;
  g.family = SwitchingFamily::GaussianRegDelta;
  g.regulator = 0.0;
  EXPECT_THROW(g.validate(), ConfigError);
}

TEST(Smearing, NormalizedAtZero) {
  for (int n = 2; n <= 5; ++n) {
    for (auto f : {SmearingFamily::PointLike, SmearingFamily::GaussianBall, SmearingFamily::TopHatBall}) {
      EXPECT_NEAR(profiles::smearing_fourier_sq(sm(f, 0.7, n), 0.0), std::pow(2 * pi, -n), 1e-15 * std::pow(2 * pi, -n));
    }
  }
}

TEST(Smearing, TopHatBallThreeDimensions) {
  // uniform ball of radius r: S(k) = 3 j1(kr)/(kr) times (2 pi)^{-3/2}
  const double R = 1.4, r = 0.5 * R;
  for (double k : {0.1, 1.0, 5.0, 23.0}) {
    const double x = k * r;
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    const double s = 3 * j1 / x;
    EXPECT_NEAR(profiles::smearing_fourier_sq(sm(SmearingFamily::TopHatBall, R, 3), k), std::pow(2 * pi, -3) * s * s,
                1e-15);
  }
}

TEST(Smearing, HydrogenFormFactor) {
  const auto s = sm(SmearingFamily::Hydrogen2s2p, 1.0, 3);
  EXPECT_NEAR(profiles::smearing_fourier_sq(s, 1.0), 0.0, 1e-18);
  EXPECT_NEAR(profiles::smearing_fourier_sq(s, 0.0), 3.0 / (2 * pi * pi), 1e-15);
}

TEST(Causal, Classes) {
  PairConfig p;
  p.switching = sw(SwitchingFamily::TopHat, 1.0);
  p.smearing = sm(SmearingFamily::TopHatBall, 0.2, 3);
  p.separation = 5.0;
  EXPECT_EQ(profiles::causal_class(p), CausalClass::Spacelike);
  p.separation = 0.0;
  p.delay = 3.0;
  EXPECT_EQ(profiles::causal_class(p), CausalClass::Timelike);
  p.delay = 0.0;
  p.separation = 1.2;
  EXPECT_EQ(profiles::causal_class(p), CausalClass::Lightlike);
  p.separation = 0.6;
  EXPECT_EQ(profiles::causal_class(p), CausalClass::Mixed);
  p.smearing = sm(SmearingFamily::GaussianBall, 0.2, 3);
  EXPECT_THROW(profiles::causal_class(p), DomainError);
}

TEST(EffectiveMargin, GaussianMassRadiusThreeDimensions) {
  // fraction of the chi_3 radial mass beyond r/sigma, by quadrature of r^2 e^{-r^2/2}
  const double r = profiles::smearing_mass_radius(sm(SmearingFamily::GaussianBall, 1.0, 3), 1e-9);
  auto dens = [](double x) { return x * x * std::exp(-0.5 * x * x); };
  const auto tail = quad::integrate<double>(dens, r, 60.0, {0.0, 1e-12, 0.0, 400});
  const auto all = quad::integrate<double>(dens, 0.0, 60.0, {0.0, 1e-12, 0.0, 400});
  EXPECT_NEAR(tail.value / all.value, 1e-9, 1e-13);
  EXPECT_NEAR(r, 6.696362843407, 1e-9);
}

TEST(EffectiveMargin, HydrogenMassRadius) {
  const auto s = sm(SmearingFamily::Hydrogen2s2p, 1.0, 3);
  const double r = profiles::smearing_mass_radius(s, 1e-9);
  auto dens = [](double x) { return x * x * x * x * std::abs(2.0 - x) * std::exp(-x); };
  const auto tail = quad::integrate<double>(dens, r, 400.0, {0.0, 1e-12, 0.0, 400});
  const auto all = quad::integrate<double>(dens, 0.0, 400.0, {0.0, 1e-12, 0.0, 400}, 2);
  EXPECT_NEAR(tail.value / all.value, 1e-9, 1e-12);
}

TEST(Overlap, HydrogenicAt190) {
  EXPECT_NEAR(profiles::log10_wavefunction_overlap(190.0, 1.0), -82.5, 1.5);
}
