#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include "harvest/errors.hpp"

namespace harvest::quad {

namespace detail {

// Gauss-Kronrod 10/21 abscissae and weights (QUADPACK qk21).
inline constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478312, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

}  // namespace detail

template <class T>
struct Panel {
  double a = 0, b = 0;
  T value{};
  double error = 0;
  double envelope = 0;  // integral of |f|
};

// One 21-point Kronrod panel with the QUADPACK error heuristic.
template <class T, class F>
Panel<T> gk21(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<T, 21> fv;
  fv[10] = f(c);
  for (int j = 0; j < 10; ++j) {
    const double dx = h * detail::xgk[j];
    fv[j] = f(c - dx);
    fv[20 - j] = f(c + dx);
  }
  T kron = fv[10] * detail::wgk[10];
  T gauss{};
  double resabs = detail::magnitude(fv[10]) * detail::wgk[10];
  for (int j = 0; j < 10; ++j) {
    kron += (fv[j] + fv[20 - j]) * detail::wgk[j];
    resabs += (detail::magnitude(fv[j]) + detail::magnitude(fv[20 - j])) * detail::wgk[j];
    if (j % 2 == 1) gauss += (fv[j] + fv[20 - j]) * detail::wg[j / 2];
  }
  const T mean = kron * 0.5;
  double resasc = detail::wgk[10] * detail::magnitude(fv[10] - mean);
  for (int j = 0; j < 10; ++j) {
    resasc += detail::wgk[j] * (detail::magnitude(fv[j] - mean) + detail::magnitude(fv[20 - j] - mean));
  }
  const double ah = std::abs(h);
  resasc *= ah;
  resabs *= ah;
  double err = detail::magnitude((kron - gauss) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, kron * h, err, resabs};
}

template <class T>
struct Result {
  T value{};
  double error = 0;
  double envelope = 0;
  std::size_t evals = 0;
  bool converged = true;
};

struct Tolerance {
  double abs = 0.0;
  double rel = 1e-10;
  double envelope_offset = 0.0;  // envelope already accumulated elsewhere, counted in the relative target
  std::size_t max_subdivisions = 1000;
};

// Globally adaptive bisection until the summed error meets
// max(abs, rel * (envelope_offset + envelope)).
template <class T, class F>
Result<T> integrate(F&& f, double a, double b, const Tolerance& tol, std::size_t initial_panels = 1) {
  Result<T> out;
  if (a == b) return out;
  initial_panels = std::max<std::size_t>(1, initial_panels);
  auto cmp = [](const Panel<T>& x, const Panel<T>& y) { return x.error < y.error; };
  std::vector<Panel<T>> heap;
  heap.reserve(initial_panels + 2 * tol.max_subdivisions);
  double err = 0.0, env = 0.0;
  for (std::size_t i = 0; i < initial_panels; ++i) {
    const double lo = a + (b - a) * static_cast<double>(i) / initial_panels;
    const double hi = (i + 1 == initial_panels) ? b : a + (b - a) * static_cast<double>(i + 1) / initial_panels;
    heap.push_back(gk21<T>(f, lo, hi));
    err += heap.back().error;
    env += heap.back().envelope;
  }
  out.evals = 21 * initial_panels;
  std::make_heap(heap.begin(), heap.end(), cmp);
  std::size_t splits = 0;
  auto target = [&] { return std::max(tol.abs, tol.rel * (tol.envelope_offset + env)); };
  while (err > target()) {
    if (splits >= tol.max_subdivisions) {
      out.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const Panel<T> worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      out.converged = false;  // interval cannot be bisected further
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), cmp);
      break;
    }
    Panel<T> l = gk21<T>(f, worst.a, mid);
    Panel<T> r = gk21<T>(f, mid, worst.b);
    out.evals += 42;
    err += l.error + r.error - worst.error;
    env += l.envelope + r.envelope - worst.envelope;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end(), cmp);
    ++splits;
  }
  // Sum in position order so the value does not depend on heap layout.
  std::sort(heap.begin(), heap.end(), [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
  err = 0.0;
  env = 0.0;
  for (const auto& p : heap) {
    out.value += p.value;
    err += p.error;
    env += p.envelope;
  }
  out.error = err;
  out.envelope = env;
  return out;
}

struct Rule {
  std::vector<double> x, w;
};

// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline Rule gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("gauss_legendre: need at least one node");
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  const double pi = 3.14159265358979323846;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 4e-16) {
        // refresh the derivative at the converged node
        p0 = 1.0;
        p1 = z;
        for (std::size_t k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

// Shared, immutable rules keyed by size; thread safe.
inline std::shared_ptr<const Rule> cached_gauss_legendre(std::size_t n) {
  static std::mutex mtx;
  static std::map<std::size_t, std::shared_ptr<const Rule>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const Rule>(gauss_legendre(n));
  cache.emplace(n, rule);
  return rule;
}

}  // namespace harvest::quad
