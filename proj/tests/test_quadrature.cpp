#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "harvest/quadrature.hpp"
#include "harvest/specfun.hpp"

using namespace harvest;
using specfun::pi;

TEST(GaussKronrod, ExactForLowDegreePolynomials) {
  for (int deg = 0; deg <= 29; ++deg) {
    auto f = [deg](double x) { return std::pow(x, deg); };
    const auto p = quad::gk21<double>(f, -1.0, 1.0);
    const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    EXPECT_NEAR(p.value, exact, 1e-14) << deg;
  }
}

TEST(Integrate, SmoothFunctions) {
  const quad::Tolerance tol{0.0, 1e-13, 0.0, 200};
  const auto r = quad::integrate<double>([](double x) { return std::exp(x); }, 0.0, 3.0, tol);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::expm1(3.0), 1e-12);
  EXPECT_LE(std::abs(r.value - std::expm1(3.0)), std::max(r.error, 1e-13));
}

TEST(Integrate, EndpointSingularity) {
  // int_0^1 x^{-1/2} = 2
  const quad::Tolerance tol{0.0, 1e-10, 0.0, 500};
  const auto r = quad::integrate<double>([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tol);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(Integrate, OscillatoryComplexWithPresplit) {
  const double w = 400.0;
  auto f = [w](double t) { return std::exp(std::complex<double>(0.0, w * t)); };
  const quad::Tolerance tol{0.0, 1e-12, 0.0, 500};
  const auto r = quad::integrate<std::complex<double>>(f, 0.0, 1.0, tol, 64);
  const auto exact = (std::exp(std::complex<double>(0.0, w)) - 1.0) / std::complex<double>(0.0, w);
  EXPECT_LT(std::abs(r.value - exact), 1e-12);
  EXPECT_NEAR(r.envelope, 1.0, 1e-10);
}

TEST(Integrate, ReportsBudgetExhaustion) {
  const quad::Tolerance tol{0.0, 1e-14, 0.0, 5};
  const auto r = quad::integrate<double>([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, tol);
  EXPECT_FALSE(r.converged);
}

TEST(Integrate, DeterministicSummation) {
  const quad::Tolerance tol{0.0, 1e-12, 0.0, 300};
  auto f = [](double x) { return std::cos(30 * x) / (1 + x * x); };
  const auto a = quad::integrate<double>(f, -5.0, 5.0, tol);
  const auto b = quad::integrate<double>(f, -5.0, 5.0, tol);
  EXPECT_EQ(a.value, b.value);
}

TEST(GaussLegendre, WeightsAndExactness) {
  for (std::size_t n : {2u, 7u, 16u, 40u}) {
    const auto rule = quad::gauss_legendre(n);
    double wsum = 0.0;
    for (double w : rule.w) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-14) << n;
    const int deg = static_cast<int>(2 * n - 2);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += rule.w[i] * std::pow(rule.x[i], deg);
    EXPECT_NEAR(s, 2.0 / (deg + 1), 1e-13) << n;
  }
}

TEST(GaussLegendre, CacheReturnsSameRule) {
  const auto a = quad::cached_gauss_legendre(16);
  const auto b = quad::cached_gauss_legendre(16);
  EXPECT_EQ(a.get(), b.get());
}
