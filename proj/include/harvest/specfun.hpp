#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "harvest/errors.hpp"

namespace harvest {

using cplx = std::complex<double>;

// Spatial dimension of the detectors' space, 2 <= n <= 16.
class SphereDim {
public:
  explicit SphereDim(int n) : n_(n) {
    if (n < 2 || n > 16) throw DomainError("spatial dimension must lie in [2, 16]");
  }
  int n() const { return n_; }
  bool operator==(const SphereDim&) const = default;

private:
  int n_;
};

namespace specfun {

inline constexpr double pi = std::numbers::pi;

// Lanczos approximation, g = 7, nine coefficients.
inline double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("gamma: argument must be positive and finite");
  if (x < 0.5) return pi / (std::sin(pi * x) * gamma(1.0 - x));
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * pi) * std::exp((z + 0.5) * std::log(t) - t) * a;
}

// Gamma(m/2) for a positive integer m, by exact recurrence from Gamma(1) and Gamma(1/2).
inline double gamma_half(int m) {
  if (m < 1) throw DomainError("gamma_half: argument must be positive");
  double g = (m % 2 == 0) ? 1.0 : std::sqrt(pi);
  for (int k = (m % 2 == 0) ? 2 : 1; k + 2 <= m; k += 2) g *= 0.5 * k;
  return g;
}

// Area of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
inline double sphere_area(SphereDim d) {
  return 2.0 * std::pow(pi, 0.5 * d.n()) / gamma_half(d.n());
}

namespace detail {

// Spherical Bessel j_l by its power series, for x below ~1.
inline double sph_bessel_series(int l, double x) {
  double dfact = 1.0;  // (2l+1)!!
  for (int k = 3; k <= 2 * l + 1; k += 2) dfact *= k;
  const double y = -0.5 * x * x;
  double term = 1.0 / dfact, sum = term;
  for (int m = 1; m < 40; ++m) {
    term *= y / (m * (2.0 * m + 2.0 * l + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::pow(x, l) * sum;
}

// Integer-order J_nu(x) by Miller's backward recurrence, normalized by J0 + 2 sum J_2k = 1.
inline double bessel_j_miller(int nu, double x) {
  int start = static_cast<int>(x + 50.0 + 5.0 * std::sqrt(x)) + nu;
  if (start % 2) ++start;
  double jp = 0.0, j = 1e-30, saved = 0.0, norm = 0.0;
  for (int m = start; m >= 1; --m) {
    const double jm = (2.0 * m / x) * j - jp;
    jp = j;
    j = jm;  // j now holds J_{m-1}
    if (m - 1 == nu) saved = j;
    if ((m - 1) % 2 == 0 && m - 1 > 0) norm += 2.0 * j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp *= 1e-250;
      saved *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += j;
  return saved / norm;
}

// Hankel asymptotic expansion of integer-order J_nu(x), for x >= 60.
inline double bessel_j_hankel(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0, q = 0.0;
  double a = 1.0;  // a_k(nu) / x^k
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (k > 0) a *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    if (std::abs(a) > last) break;
    last = std::abs(a);
    const double s = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) p += s * a;
    else q += s * a;
    if (std::abs(a) < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * pi;
  return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

inline double hyp0f1_series(int two_b, double x) {
  const double b = 0.5 * two_b;
  const double z = -0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 0; m < 400; ++m) {
    term *= z / ((b + m) * (m + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum)) && m > 2) break;
  }
  return sum;
}

// 0F1(b; -x^2/4) through Gamma(nu+1) (x/2)^{-nu} J_nu(x), nu = b - 1.
inline double hyp0f1_bessel(int two_b, double x) {
  if (two_b % 2 == 1) {
    // nu = l + 1/2: value = (2l+1)!! j_l(x) / x^l
    const int l = (two_b - 3) / 2;
    double j0 = std::sin(x) / x;
    if (l == 0) return j0;
    double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    for (int m = 1; m < l; ++m) {
      const double j2 = (2.0 * m + 1.0) / x * j1 - j0;
      j0 = j1;
      j1 = j2;
    }
    double scale = 1.0;
    for (int k = 3; k <= 2 * l + 1; k += 2) scale *= k / x;
    return scale * j1;
  }
  const int nu = two_b / 2 - 1;
  const double jnu = (x < 60.0) ? bessel_j_miller(nu, x) : bessel_j_hankel(nu, x);
  double scale = 1.0;
  for (int k = 1; k <= nu; ++k) scale *= 2.0 * k / x;
  return scale * jnu;
}

inline constexpr double hyp0f1_seam = 10.0;

}  // namespace detail

// 0F1(b; -x^2/4) for half-integer b = two_b/2 >= 1, x >= 0.
inline double hyp0f1_neg_sq(int two_b, double x) {
  if (!(x >= 0.0)) throw DomainError("hyp0f1: x must be nonnegative");
  if (two_b < 2 || two_b > 40) throw DomainError("hyp0f1: order outside supported range");
  if (x <= detail::hyp0f1_seam) return detail::hyp0f1_series(two_b, x);
  return detail::hyp0f1_bessel(two_b, x);
}

// 0F1(n/2; -x^2/4), the angular average of a plane wave over S^{n-1}.
inline double hyp0f1_half_n(SphereDim d, double x) { return hyp0f1_neg_sq(d.n(), x); }

// Integer-order Bessel function of the first kind, nu in [0, 20].
inline double bessel_j(int nu, double x) {
  if (nu < 0 || nu > 20) throw DomainError("bessel_j: order outside supported range");
  if (!(x >= 0.0)) throw DomainError("bessel_j: x must be nonnegative");
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  if (x <= detail::hyp0f1_seam) {
    double scale = 1.0;
    for (int k = 1; k <= nu; ++k) scale *= x / (2.0 * k);
    return scale * detail::hyp0f1_series(2 * nu + 2, x);
  }
  return (x < 60.0) ? detail::bessel_j_miller(nu, x) : detail::bessel_j_hankel(nu, x);
}

// j_0 and j_2. The j_2 closed form cancels like x^4 near the origin, so its series runs up to x = 1.
inline double spherical_bessel(int l, double x) {
  if (!(x >= 0.0)) throw DomainError("spherical_bessel: x must be nonnegative");
  if (l == 0) {
    if (x < 0.1) return detail::sph_bessel_series(0, x);
    return std::sin(x) / x;
  }
  if (l == 2) {
    if (x < 1.0) return detail::sph_bessel_series(2, x);
    const double s = std::sin(x), c = std::cos(x);
    return ((3.0 - x * x) * s - 3.0 * x * c) / (x * x * x);
  }
  throw DomainError("spherical_bessel: only l = 0 and l = 2 are supported");
}

// j_0(x) + j_2(x) = 3 j_1(x) / x.
inline double bessel_kernel_bound_check(double x) {
  return spherical_bessel(0, x) + spherical_bessel(2, x);
}

inline double erf_real(double x) { return std::erf(x); }

// e^z - 1 without cancellation for small |z|.
inline cplx expm1(cplx z) {
  const double x = z.real(), y = z.imag();
  const double sh = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y)};
}

// phi_1(z) = (e^z - 1)/z, phi_1(0) = 1.
inline cplx phi1(cplx z) {
  if (std::abs(z) < 1e-3) {
    return 1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0 * (1.0 + z / 5.0)));
  }
  return expm1(z) / z;
}

namespace detail {

inline cplx erf_taylor_scaled(cplx z, double log_scale) {
  // sum_m (-1)^m z^{2m+1} / (m! (2m+1)), started at e^{log_scale} to keep terms in range
  const cplx z2 = -z * z;
  cplx term = z * std::exp(log_scale);
  cplx sum = term;
  const double r2 = std::norm(z);
  for (int m = 0; m < 20000; ++m) {
    term *= z2 / (m + 1.0);
    const cplx add = term / (2.0 * m + 3.0);
    sum += add;
    if (m > r2 && std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 / std::sqrt(pi) * sum;
}

// Faddeeva w(zeta) by the Laplace continued fraction; Im zeta >= 0.
inline cplx faddeeva_cf(cplx zeta) {
  constexpr double tiny = 1e-300;
  cplx f = zeta, c = zeta, d = 0.0;
  if (f == 0.0) f = c = tiny;
  for (int j = 1; j < 200000; ++j) {
    const double a = -0.5 * j;
    d = zeta + a * d;
    if (d == 0.0) d = tiny;
    c = zeta + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const cplx delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return cplx(0.0, 1.0 / std::sqrt(pi)) / f;
}

}  // namespace detail

namespace detail {

// e^{-(Im z)^2} erf(z) for any finite z.
inline cplx erf_scaled(cplx z) {
  if (z.real() < 0.0) return -erf_scaled(-z);
  const double x = z.real(), y = z.imag();
  const double r = std::abs(z);
  if (r < 2.0) return erf_taylor_scaled(z, 0.0) * std::exp(-y * y);
  if (x < 1.0 && r < 6.0) return erf_taylor_scaled(z, -0.5 * y * y) * std::exp(-0.5 * y * y);
  // erf z = 1 - e^{-z^2} w(iz)
  const cplx w = faddeeva_cf(cplx(-y, x));
  return std::exp(-y * y) - std::exp(cplx(-x * x, -2.0 * x * y)) * w;
}

}  // namespace detail

// e^{-(Im z)^2} erf(z), bounded on the strip |Im z| <= 30.
inline cplx erf_complex_abs_decay(cplx z) {
  if (!(std::abs(z.imag()) <= 30.0) || !std::isfinite(z.real())) {
    throw DomainError("erf_complex_abs_decay: |Im z| must not exceed 30");
  }
  return detail::erf_scaled(z);
}

inline cplx erf_complex(cplx z) { return erf_complex_abs_decay(z) * std::exp(z.imag() * z.imag()); }

}  // namespace specfun
}  // namespace harvest
