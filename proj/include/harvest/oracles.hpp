#pragma once

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "harvest/engine.hpp"
#include "harvest/errors.hpp"
#include "harvest/profiles.hpp"
#include "harvest/specfun.hpp"

namespace harvest::oracles {

using specfun::pi;

struct OracleReport {
  cplx value;
  double statistical_error = 0.0;  // MC: standard error of Re(value)
  double quadrature_error = 0.0;   // brute force: Richardson-based bound
  std::uint64_t samples_or_evals = 0;
  std::uint64_t seed = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr unsigned mc_substreams = 16;

// int dOmega_{n-1} e^{i k.dx} by uniform sampling of S^{n-1} via normalized Gaussian vectors.
// The sample budget is split over a fixed number of substreams, so the estimate does not
// depend on the thread count.
inline OracleReport mc_angular_plane_wave(SphereDim d, double kd, std::uint64_t samples, std::uint64_t seed,
                                          unsigned threads = 1) {
  if (samples < 10000) throw DomainError("mc_angular_plane_wave needs at least 1e4 samples");
  const int n = d.n();
  struct Partial {
    double sc = 0, ss = 0, scc = 0;
    std::uint64_t count = 0;
  };
  std::vector<Partial> parts(mc_substreams);
  auto run = [&](unsigned s) {
    std::mt19937_64 gen(splitmix64(seed ^ splitmix64(s + 1)));
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::uint64_t count = samples / mc_substreams + (s < samples % mc_substreams ? 1 : 0);
    Partial p;
    p.count = count;
    std::vector<double> g(n);
    for (std::uint64_t i = 0; i < count; ++i) {
      double r2 = 0.0;
      for (int j = 0; j < n; ++j) {
        g[j] = normal(gen);
        r2 += g[j] * g[j];
      }
      const double u = g[0] / std::sqrt(r2);
      const double c = std::cos(kd * u), sn = std::sin(kd * u);
      p.sc += c;
      p.ss += sn;
      p.scc += c * c;
    }
    parts[s] = p;
  };
  threads = std::max(1u, std::min(threads, mc_substreams));
  if (threads == 1) {
    for (unsigned s = 0; s < mc_substreams; ++s) run(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (unsigned s = t; s < mc_substreams; s += threads) run(s);
      });
    }
    for (auto& th : pool) th.join();
  }
  double sc = 0, ss = 0, scc = 0;
  for (const auto& p : parts) {
    sc += p.sc;
    ss += p.ss;
    scc += p.scc;
  }
  const double N = static_cast<double>(samples);
  const double mean_c = sc / N, mean_s = ss / N;
  const double var_c = std::max(0.0, scc / N - mean_c * mean_c) * N / (N - 1.0);
  const double area = specfun::sphere_area(d);
  OracleReport rep;
  rep.value = area * cplx(mean_c, mean_s);
  rep.statistical_error = area * std::sqrt(var_c / N);
  rep.samples_or_evals = samples;
  rep.seed = seed;
  return rep;
}

namespace detail {

struct BruteGrid {
  std::size_t nk, nang, nt;
};

// Tensor trapezoid over (|k|, angle, t1, t2) at one resolution.
inline cplx brute_force_pass(const PairConfig& p, const BruteGrid& g, double k_max) {
  const int n = p.dim.n();
  const SwitchingSpec sa = p.switching_a(), sb = p.switching_b();
  const double t_lo = std::min(sa.support_begin(), sb.support_begin());
  const double t_hi = std::max(sa.support_end(), sb.support_end());
  const double ht = (t_hi - t_lo) / g.nt;
  std::vector<double> t(g.nt + 1), xa(g.nt + 1), xb(g.nt + 1), wt(g.nt + 1, 1.0);
  for (std::size_t i = 0; i <= g.nt; ++i) {
    t[i] = t_lo + ht * i;
    xa[i] = profiles::switching_value(sa, t[i]);
    xb[i] = profiles::switching_value(sb, t[i]);
  }
  wt.front() = wt.back() = 0.5;
  const double d = p.separation, hk = k_max / g.nk;
  cplx total = 0.0;
  std::vector<cplx> ea(g.nt + 1), eb(g.nt + 1);
  for (std::size_t ik = 0; ik <= g.nk; ++ik) {
    const double k = hk * ik;
    const double wk = (ik == 0 || ik == g.nk) ? 0.5 : 1.0;
    const double radial = std::pow(k, n - 2) * profiles::smearing_fourier_sq(p.smearing, k);
    if (radial == 0.0) continue;
    // angular trapezoid, d along the polar axis
    cplx ang = 0.0;
    if (n == 2) {
      for (std::size_t j = 0; j < g.nang; ++j) ang += std::exp(cplx(0.0, k * d * std::cos(2.0 * pi * j / g.nang)));
      ang *= 2.0 * pi / g.nang;
    } else {
      const double hth = pi / g.nang;
      for (std::size_t j = 1; j < g.nang; ++j) {
        const double th = hth * j;
        ang += std::sin(th) * std::exp(cplx(0.0, k * d * std::cos(th)));
      }
      ang *= 2.0 * pi * hth;
    }
    // nested times: theta(t1 - t2) with weight 1/2 on the diagonal, summed by prefix sums
    const double a = k - p.gap, b = k + p.gap;
    for (std::size_t i = 0; i <= g.nt; ++i) {
      ea[i] = std::exp(cplx(0.0, -a * t[i]));
      eb[i] = std::exp(cplx(0.0, b * t[i]));
    }
    cplx run_a = 0.0, run_b = 0.0, kern = 0.0;
    for (std::size_t i = 0; i <= g.nt; ++i) {
      const cplx inner_b = run_b + 0.5 * wt[i] * xb[i] * eb[i];
      const cplx inner_a = run_a + 0.5 * wt[i] * xa[i] * eb[i];
      kern += wt[i] * ea[i] * (xa[i] * inner_b + xb[i] * inner_a);
      run_b += wt[i] * xb[i] * eb[i];
      run_a += wt[i] * xa[i] * eb[i];
    }
    kern *= ht * ht;
    total += wk * radial * 0.5 * ang * kern;
  }
  return -p.coupling * p.coupling * hk * total;
}

}  // namespace detail

// M from the unreduced momentum form by tensor trapezoid quadrature, Richardson-extrapolated
// against half resolution. Requires Gaussian smearing so the momentum cutoff is controlled.
inline OracleReport brute_force_M(const PairConfig& p, std::size_t resolution) {
  p.validate();
  const int n = p.dim.n();
  if (n != 2 && n != 3) throw DomainError("brute_force_M supports n = 2 and n = 3");
  if (p.switching.family != SwitchingFamily::TopHat && p.switching.family != SwitchingFamily::CosineBump) {
    throw DomainError("brute_force_M needs a compact switching family");
  }
  if (p.smearing.family != SmearingFamily::GaussianBall) {
    throw DomainError("brute_force_M needs Gaussian smearing for a controlled momentum cutoff");
  }
  if (resolution < 8 || resolution % 2) throw DomainError("resolution must be even and at least 8");
  const double k_max = 6.5 / p.smearing.scale;
  const detail::BruteGrid fine{4 * resolution, resolution, resolution};
  const detail::BruteGrid half{2 * resolution, resolution / 2, resolution / 2};
  auto evals = [](const detail::BruteGrid& g) { return (g.nk + 1) * (g.nang + 2 * (g.nt + 1)); };
  const std::uint64_t total = evals(fine) + evals(half);
  if (total > 1000000000ULL) throw BudgetExceeded("brute_force_M resolution exceeds 1e9 evaluations");
  const cplx vf = detail::brute_force_pass(p, fine, k_max);
  const cplx vh = detail::brute_force_pass(p, half, k_max);
  OracleReport rep;
  rep.value = (4.0 * vf - vh) / 3.0;
  rep.quadrature_error = 2.0 * std::abs(vf - vh);
  rep.samples_or_evals = total;
  return rep;
}

enum class RefFunction { Hyp0F1, J0, SphJ0, SphJ2, Erf, Gamma };

namespace detail {

using big = boost::multiprecision::cpp_bin_float_100;

inline big big_pi() { return boost::math::constants::pi<big>(); }

// 0F1(b; -x^2/4) by its Taylor series
inline big hyp0f1_big(const big& b, const big& x) {
  const big z = -x * x / 4;
  big term = 1, sum = 1;
  for (int m = 0; m < 5000; ++m) {
    term *= z / ((b + m) * (m + 1));
    sum += term;
    if (m > 10 && abs(term) < 1e-60 * (abs(sum) + 1e-40)) return sum;
  }
  throw NonConvergence("extended-precision series did not converge");
}

inline big erf_big(const big& x) {
  big term = x, sum = x;
  const big x2 = -x * x;
  for (int m = 0; m < 20000; ++m) {
    term *= x2 / (m + 1);
    const big add = term / (2 * m + 3);
    sum += add;
    if (m > 10 && abs(add) < 1e-60 * abs(sum)) return 2 * sum / sqrt(big_pi());
  }
  throw NonConvergence("extended-precision series did not converge");
}

// ln Gamma by shifting to z >= 40 and summing the Stirling series with Bernoulli numbers.
inline big gamma_big(const big& x) {
  big z = x, shift = 1;
  while (z < 40) {
    shift *= z;
    z += 1;
  }
  big s = (z - big(0.5)) * log(z) - z + log(2 * big_pi()) / 2;
  big zp = z;
  const big z2 = z * z;
  for (int k = 1; k <= 40; ++k) {
    const big b2k = boost::math::bernoulli_b2n<big>(k);
    s += b2k / (big(2 * k) * big(2 * k - 1) * zp);
    zp *= z2;
  }
  return exp(s) / shift;
}

}  // namespace detail

// Extended-precision references. Domains: Hyp0F1, J0, SphJ0, SphJ2 on [0, 60]; Erf on [-8, 8];
// Gamma on (0, 170]. `order` is the dimension n for Hyp0F1.
inline double highprec_reference(RefFunction fn, double x, int order = 3) {
  using detail::big;
  const big bx = x;
  switch (fn) {
    case RefFunction::Hyp0F1:
      if (!(x >= 0 && x <= 60) || order < 2) break;
      return static_cast<double>(detail::hyp0f1_big(big(order) / 2, bx));
    case RefFunction::J0:
      if (!(x >= 0 && x <= 60)) break;
      return static_cast<double>(detail::hyp0f1_big(big(1), bx));
    case RefFunction::SphJ0:
      if (!(x >= 0 && x <= 60)) break;
      return static_cast<double>(detail::hyp0f1_big(big(3) / 2, bx));
    case RefFunction::SphJ2:
      if (!(x >= 0 && x <= 60)) break;
      // j2(x) = x^2/15 0F1(7/2; -x^2/4)
      return static_cast<double>(bx * bx / 15 * detail::hyp0f1_big(big(7) / 2, bx));
    case RefFunction::Erf:
      if (!(std::abs(x) <= 8)) break;
      return static_cast<double>(detail::erf_big(bx));
    case RefFunction::Gamma:
      if (!(x > 0 && x <= 170)) break;
      return static_cast<double>(detail::gamma_big(bx));
  }
  throw NonConvergence("highprec_reference: argument outside the documented domain");
}

// Extended-precision erf(z) for |z| <= 8, by Taylor series in double-double-free 100-digit arithmetic.
inline cplx highprec_erf_complex(cplx z) {
  using detail::big;
  if (!(std::abs(z) <= 8.0)) throw NonConvergence("highprec_erf_complex: |z| must not exceed 8");
  const big zr = z.real(), zi = z.imag();
  // w = -z^2
  const big wr = -(zr * zr - zi * zi), wi = -(2 * zr * zi);
  big tr = zr, ti = zi, sr = zr, si = zi;
  for (int m = 0; m < 20000; ++m) {
    const big nr = (tr * wr - ti * wi) / (m + 1), ni = (tr * wi + ti * wr) / (m + 1);
    tr = nr;
    ti = ni;
    sr += tr / (2 * m + 3);
    si += ti / (2 * m + 3);
    if (m > 200 && abs(tr) + abs(ti) < 1e-70) break;
  }
  const big c = 2 / sqrt(detail::big_pi());
  return {static_cast<double>(c * sr), static_cast<double>(c * si)};
}

}  // namespace harvest::oracles
