#include <gtest/gtest.h>

#include <cmath>

#include "harvest/oracles.hpp"
#include "harvest/specfun.hpp"

using namespace harvest;
using harvest::oracles::RefFunction;
using harvest::oracles::highprec_reference;
using specfun::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<double> log_grid(double lo, double hi, int m) {
  std::vector<double> g;
  for (int i = 0; i < m; ++i) g.push_back(lo * std::pow(hi / lo, i / (m - 1.0)));
  return g;
}

}  // namespace

TEST(SphereDim, RejectsOutOfRange) {
  EXPECT_THROW(SphereDim(1), DomainError);
  EXPECT_THROW(SphereDim(17), DomainError);
  EXPECT_NO_THROW(SphereDim(2));
  EXPECT_NO_THROW(SphereDim(16));
}

TEST(SphereArea, LowDimensions) {
  EXPECT_NEAR(specfun::sphere_area(SphereDim(2)), 2 * pi, 1e-15);
  EXPECT_NEAR(specfun::sphere_area(SphereDim(3)), 4 * pi, 1e-14);
}

TEST(SphereArea, FiveAgainstOracleGamma) {
  const double expected = 2 * std::pow(pi, 2.5) / highprec_reference(RefFunction::Gamma, 2.5);
  EXPECT_LT(rel(specfun::sphere_area(SphereDim(5)), expected), 1e-15);
  EXPECT_LT(rel(expected, 8 * pi * pi / 3), 1e-15);
}

TEST(SphereArea, GammaProductIdentity) {
  for (int n = 2; n <= 16; ++n) {
    const double lhs = specfun::sphere_area(SphereDim(n)) * highprec_reference(RefFunction::Gamma, 0.5 * n);
    EXPECT_LT(rel(lhs, 2 * std::pow(pi, 0.5 * n)), 1e-14) << n;
  }
}

TEST(Gamma, LanczosAgainstOracle) {
  for (double x = 0.5; x <= 20.0; x += 0.37) {
    EXPECT_LT(rel(specfun::gamma(x), highprec_reference(RefFunction::Gamma, x)), 1e-13) << x;
  }
  EXPECT_THROW(specfun::gamma(0.0), DomainError);
}

TEST(Gamma, HalfIntegersExact) {
  for (int m = 1; m <= 40; ++m) {
    EXPECT_LT(rel(specfun::gamma_half(m), highprec_reference(RefFunction::Gamma, 0.5 * m)), 1e-14) << m;
  }
}

TEST(Hyp0F1, Origin) {
  for (int n = 2; n <= 16; ++n) EXPECT_EQ(specfun::hyp0f1_half_n(SphereDim(n), 0.0), 1.0);
}

TEST(Hyp0F1, SincZeroForThreeDimensions) {
  EXPECT_LT(std::abs(specfun::hyp0f1_half_n(SphereDim(3), pi)), 1e-15);
}

TEST(Hyp0F1, FirstZeroOfJ0) {
  // bisection on the extended-precision J0
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (highprec_reference(RefFunction::J0, mid) > 0 ? lo : hi) = mid;
  }
  const double zero = 0.5 * (lo + hi);
  EXPECT_NEAR(zero, 2.404825557695773, 1e-12);
  EXPECT_LT(std::abs(specfun::hyp0f1_half_n(SphereDim(2), zero)), 1e-10);
}

TEST(Hyp0F1, AgainstOracle) {
  for (int n = 2; n <= 8; ++n) {
    for (double x : log_grid(1e-3, 60.0, 70)) {
      const double ref = highprec_reference(RefFunction::Hyp0F1, x, n);
      EXPECT_NEAR(specfun::hyp0f1_half_n(SphereDim(n), x), ref, 1e-12) << "n=" << n << " x=" << x;
    }
  }
}

TEST(Hyp0F1, BoundedByOne) {
  for (int n = 2; n <= 8; ++n) {
    for (double x : log_grid(1e-4, 200.0, 400)) {
      EXPECT_LE(std::abs(specfun::hyp0f1_half_n(SphereDim(n), x)), 1.0 + 1e-12) << n << " " << x;
    }
  }
}

TEST(Hyp0F1, SeamAgreement) {
  const double x = specfun::detail::hyp0f1_seam;
  for (int two_b = 2; two_b <= 16; ++two_b) {
    const double s = specfun::detail::hyp0f1_series(two_b, x);
    const double b = specfun::detail::hyp0f1_bessel(two_b, x);
    EXPECT_LT(std::abs(s - b), 1e-10 * std::abs(b)) << two_b;
  }
  // Miller / Hankel seam at 60
  for (int nu = 0; nu <= 6; ++nu) {
    const double m = specfun::detail::bessel_j_miller(nu, 60.0);
    const double h = specfun::detail::bessel_j_hankel(nu, 60.0);
    EXPECT_LT(std::abs(m - h), 1e-10 * std::abs(m)) << nu;
  }
}

TEST(Hyp0F1, ThreeDimensionalClosedForm) {
  for (double x = 0.01; x <= 100.0; x += 0.0731) {
    EXPECT_LE(std::abs(specfun::hyp0f1_half_n(SphereDim(3), x) - std::sin(x) / x), 1e-12) << x;
  }
}

TEST(Hyp0F1, RejectsNegative) { EXPECT_THROW(specfun::hyp0f1_half_n(SphereDim(3), -1.0), DomainError); }

TEST(BesselJ, IntegerOrdersAgainstSeries) {
  // J_nu(x) = (x/2)^nu / nu! 0F1(nu + 1; -x^2/4)
  for (int nu = 0; nu <= 4; ++nu) {
    for (double x : log_grid(0.01, 55.0, 40)) {
      double pre = 1.0;
      for (int k = 1; k <= nu; ++k) pre *= x / (2.0 * k);
      const double ref = pre * highprec_reference(RefFunction::Hyp0F1, x, 2 * nu + 2);
      EXPECT_NEAR(specfun::bessel_j(nu, x), ref, 1e-13) << nu << " " << x;
    }
  }
  EXPECT_NEAR(specfun::bessel_j(0, 0.0), 1.0, 0.0);
}

TEST(SphericalBessel, Limits) {
  EXPECT_EQ(specfun::spherical_bessel(0, 0.0), 1.0);
  EXPECT_EQ(specfun::spherical_bessel(2, 0.0), 0.0);
  EXPECT_LT(std::abs(specfun::spherical_bessel(0, pi)), 1e-14);
  EXPECT_THROW(specfun::spherical_bessel(1, 1.0), DomainError);
}

TEST(SphericalBessel, AgainstOracle) {
  for (double x : log_grid(1e-4, 60.0, 120)) {
    EXPECT_LT(rel(specfun::spherical_bessel(0, x), highprec_reference(RefFunction::SphJ0, x)), 1e-11) << x;
    EXPECT_NEAR(specfun::spherical_bessel(2, x), highprec_reference(RefFunction::SphJ2, x),
                1e-12 * std::max(1e-8, std::abs(highprec_reference(RefFunction::SphJ2, x))) + 1e-16)
        << x;
  }
}

TEST(SphericalBessel, SeamsMatchToTwelveDigits) {
  const double x0 = 0.1;
  EXPECT_LT(rel(specfun::detail::sph_bessel_series(0, x0), std::sin(x0) / x0), 1e-12);
  const double x2 = 1.0;
  const double closed = ((3 - x2 * x2) * std::sin(x2) - 3 * x2 * std::cos(x2)) / (x2 * x2 * x2);
  EXPECT_LT(rel(specfun::detail::sph_bessel_series(2, x2), closed), 1e-12);
}

TEST(SphericalBessel, RayleighRecurrence) {
  for (double x = 0.5; x <= 100.0; x += 0.173) {
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    const double j0 = specfun::spherical_bessel(0, x), j2 = specfun::spherical_bessel(2, x);
    const double rhs = 3.0 / x * j1 - j0;
    EXPECT_LE(std::abs(j2 - rhs), 1e-10 * std::max(std::abs(j2), 1e-3)) << x;
  }
}

TEST(KernelBound, BoundedAndDecaying) {
  EXPECT_EQ(specfun::bessel_kernel_bound_check(0.0), 1.0);
  for (double x = 0.0; x <= 200.0; x += 0.01) {
    const double v = specfun::bessel_kernel_bound_check(x);
    EXPECT_LE(std::abs(v), 1.0 + 1e-15) << x;
    if (x > 30.0) {
      EXPECT_LT(std::abs(v), 0.1) << x;
    }
  }
}

TEST(KernelBound, PinnedAtOne) {
  const double ref = highprec_reference(RefFunction::SphJ0, 1.0) + highprec_reference(RefFunction::SphJ2, 1.0);
  EXPECT_NEAR(ref, 0.90350603681927037, 1e-15);
  EXPECT_NEAR(specfun::bessel_kernel_bound_check(1.0), ref, 1e-14);
}

TEST(Erf, Real) {
  EXPECT_EQ(specfun::erf_real(0.0), 0.0);
  EXPECT_NEAR(specfun::erf_real(10.0), 1.0, 1e-15);
  for (double x = -6.0; x <= 6.0; x += 0.05) {
    EXPECT_NEAR(specfun::erf_real(x), highprec_reference(RefFunction::Erf, x), 2e-16) << x;
    EXPECT_EQ(specfun::erf_real(-x), -specfun::erf_real(x));
  }
}

TEST(Erf, ImaginaryUnit) {
  const cplx v = specfun::erf_complex(cplx(0.0, 1.0));
  EXPECT_NEAR(v.real(), 0.0, 1e-16);
  EXPECT_GT(v.imag(), 0.0);
  const cplx ref = oracles::highprec_erf_complex(cplx(0.0, 1.0));
  EXPECT_LT(std::abs(v - ref) / std::abs(ref), 1e-14);
}

TEST(Erf, ComplexAgainstOracle) {
  // scaled values e^{-y^2} erf(z) compared relative to their own magnitude plus the bounded 1
  for (double x = -5.0; x <= 5.0; x += 0.37) {
    for (double y = -6.0; y <= 6.0; y += 0.41) {
      const cplx z(x, y);
      if (std::abs(z) > 7.9) continue;
      const cplx ref = oracles::highprec_erf_complex(z) * std::exp(-y * y);
      const cplx got = specfun::erf_complex_abs_decay(z);
      EXPECT_LT(std::abs(got - ref), 1e-13 * (1.0 + std::abs(ref))) << z;
    }
  }
}

TEST(Erf, ComplexLargeArgumentsStayFinite) {
  for (double y : {-30.0, -10.0, 10.0, 30.0}) {
    for (double x : {-50.0, -3.0, 0.0, 0.5, 3.0, 50.0}) {
      const cplx v = specfun::erf_complex_abs_decay(cplx(x, y));
      EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag())) << x << " " << y;
    }
  }
  EXPECT_THROW(specfun::erf_complex_abs_decay(cplx(0.0, 31.0)), DomainError);
}

TEST(Erf, ContinuedFractionMatchesTaylorAtSwitch) {
  // beyond the Taylor region the value comes from the Faddeeva continued fraction
  for (double t = 0.0; t < 2 * pi; t += 0.3) {
    const cplx z = 6.5 * cplx(std::cos(t), std::sin(t));
    if (std::abs(z.real()) < 1.0) continue;
    const cplx ref = oracles::highprec_erf_complex(z) * std::exp(-z.imag() * z.imag());
    EXPECT_LT(std::abs(specfun::erf_complex_abs_decay(z) - ref), 1e-13 * (1.0 + std::abs(ref))) << z;
  }
}

TEST(Phi1, SmallArgumentSeries) {
  for (double r : {1e-9, 1e-5, 9e-4, 2e-3, 0.1}) {
    const cplx z(0.0, r);
    const cplx direct = (std::exp(z) - 1.0) / z;
    EXPECT_LT(std::abs(specfun::phi1(z) - direct), 1e-12 * std::max(1.0, 1e-6 / r)) << r;
  }
  EXPECT_EQ(specfun::phi1(0.0), cplx(1.0));
}
