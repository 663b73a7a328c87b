#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "harvest/errors.hpp"
#include "harvest/kernels.hpp"
#include "harvest/profiles.hpp"
#include "harvest/quadrature.hpp"
#include "harvest/specfun.hpp"

namespace harvest {

enum class Route { Reduced, Direct };

inline std::string to_string(Route r) { return r == Route::Reduced ? "reduced" : "direct"; }

struct CutoffPolicy {
  enum class Kind { AdaptiveTail, FixedCutoff };
  Kind kind = Kind::AdaptiveTail;
  double tail_frac = 1e-10;
  double k_max = 0.0;

  static CutoffPolicy adaptive(double tail_frac) { return {Kind::AdaptiveTail, tail_frac, 0.0}; }
  static CutoffPolicy fixed(double k_max) { return {Kind::FixedCutoff, 1e-10, k_max}; }
};

struct QuadratureSettings {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  CutoffPolicy cutoff;
  std::size_t max_subdivisions = 2000;
  std::size_t mc_samples = 1000000;
  std::uint64_t seed = 20190612;

  void validate() const {
    if (!(rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
    if (!(abs_tol >= 0.0)) throw ConfigError("abs_tol must be nonnegative");
    if (cutoff.kind == CutoffPolicy::Kind::AdaptiveTail && !(cutoff.tail_frac > 0.0 && cutoff.tail_frac <= 1e-3)) {
      throw ConfigError("tail_frac must lie in (0, 1e-3]");
    }
    if (cutoff.kind == CutoffPolicy::Kind::FixedCutoff && !(cutoff.k_max > 0.0 && std::isfinite(cutoff.k_max))) {
      throw ConfigError("k_max must be positive");
    }
    if (max_subdivisions < 1) throw ConfigError("max_subdivisions must be at least 1");
  }
};

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
};

struct HarvestResult {
  double L = 0.0;
  cplx M;
  double N2 = 0.0;
  double L_error = 0.0;
  double M_error = 0.0;
  CausalClass causal = CausalClass::Unclassified;
  Route route = Route::Reduced;
};

namespace engine {

using specfun::pi;

inline double negativity(double L, cplx M) {
  if (!(L >= 0.0)) throw DomainError("negativity: L must be nonnegative");
  return std::max(0.0, std::abs(M) - L);
}

namespace detail {

struct MomentumPlan {
  double k0 = 1.0;                 // end of the first panel
  double osc_length = 1.0;         // phase length producing oscillation in k
  std::vector<double> breakpoints;  // extra panel edges
};

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Power-law decay exponents of the integrand envelopes; -inf for faster than any power.
inline double smearing_decay(const SmearingSpec& s) {
  switch (s.family) {
    case SmearingFamily::PointLike: return 0.0;
    case SmearingFamily::GaussianBall: return -inf;
    case SmearingFamily::TopHatBall: return -(s.dimension + 1.0);
    case SmearingFamily::Hydrogen2s2p: return -12.0;
  }
  return 0.0;
}

inline double local_decay(const SwitchingSpec& s) {
  switch (s.family) {
    case SwitchingFamily::TopHat:
    case SwitchingFamily::TopHatRegDelta: return -2.0;
    case SwitchingFamily::CosineBump: return -6.0;
    case SwitchingFamily::GaussianRegDelta: return -inf;
    case SwitchingFamily::DeltaIdeal: return 0.0;
  }
  return 0.0;
}

inline double nonlocal_decay(const SwitchingSpec& s, double delay) {
  if (s.family == SwitchingFamily::DeltaIdeal) return 0.0;
  if (s.family != SwitchingFamily::GaussianRegDelta && std::abs(delay) >= s.support_length()) return local_decay(s);
  return -1.0;  // the imaginary part of an overlapping nested kernel falls like 1/k
}

inline MomentumPlan plan_for(const PairConfig& p) {
  MomentumPlan plan;
  double ell = inf;
  double osc = p.separation + std::abs(p.delay);
  const auto& s = p.switching;
  if (s.family == SwitchingFamily::TopHat || s.family == SwitchingFamily::CosineBump) {
    ell = std::min(ell, s.duration);
    osc += s.duration;
  } else if (s.family == SwitchingFamily::TopHatRegDelta || s.family == SwitchingFamily::GaussianRegDelta) {
    ell = std::min(ell, s.regulator);
    osc += s.regulator;
  }
  if (p.smearing.family != SmearingFamily::PointLike) {
    ell = std::min(ell, p.smearing.scale);
    osc += p.smearing.scale;
  }
  if (!std::isfinite(ell)) ell = std::max({p.separation, std::abs(p.delay), 1.0});
  plan.k0 = 2.0 * pi / ell;
  plan.osc_length = std::max(osc, 1e-300);
  if (p.gap != 0.0) plan.breakpoints.push_back(std::abs(p.gap));
  return plan;
}

template <class T>
struct MomentumOutcome {
  T value{};
  double error = 0.0;
  double envelope = 0.0;
};

// int_0^kmax f(k) dk over octave panels [0, k0], [k0, 2k0], ...
template <class T, class F>
MomentumOutcome<T> momentum_integral(F&& f, const MomentumPlan& plan, const QuadratureSettings& q) {
  MomentumOutcome<T> out;
  const bool fixed = q.cutoff.kind == CutoffPolicy::Kind::FixedCutoff;
  double scale_max = plan.k0;
  for (double b : plan.breakpoints) scale_max = std::max(scale_max, b);
  int quiet = 0;
  double last_env = 0.0;
  double lo = 0.0, hi = plan.k0;
  constexpr int max_octaves = 64;
  for (int oct = 0; oct < max_octaves; ++oct) {
    if (fixed) hi = std::min(hi, q.cutoff.k_max);
    std::vector<double> edges = {lo, hi};
    for (double b : plan.breakpoints) {
      if (b > lo && b < hi) edges.push_back(b);
    }
    std::sort(edges.begin(), edges.end());
    double oct_env = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const double a = edges[i], b = edges[i + 1];
      const double cycles = (b - a) * plan.osc_length / (2.0 * pi);
      const auto panels = static_cast<std::size_t>(std::clamp(std::ceil(cycles / 2.0), 1.0, 20000.0));
      quad::Tolerance tol{q.abs_tol / max_octaves, q.rel_tol, out.envelope, q.max_subdivisions};
      const auto r = quad::integrate<T>(f, a, b, tol, panels);
      if (!r.converged) {
        throw NonConvergence("momentum integral panel [" + std::to_string(a) + ", " + std::to_string(b) +
                             "] did not converge within the subdivision budget");
      }
      out.value += r.value;
      out.error += r.error;
      out.envelope += r.envelope;
      oct_env += r.envelope;
    }
    last_env = oct_env;
    if (fixed) {
      if (hi >= q.cutoff.k_max) return out;
    } else {
      const bool small = oct_env <= q.cutoff.tail_frac * out.envelope;
      quiet = small ? quiet + 1 : 0;
      if (quiet >= 2 && hi >= 4.0 * scale_max) {
        out.error += last_env;
        return out;
      }
    }
    lo = hi;
    hi *= 2.0;
  }
  throw NonConvergence("momentum integrand tail did not decay below tail_frac within 64 octaves");
}

// cos(theta) with an exact zero at theta = pi/2
inline double angular_cos(double theta) { return std::sin(0.5 * pi - theta); }

// int dOmega_{n-1} e^{i k . dx} by explicit quadrature, n = 2 or 3.
inline double angular_direct(int n, double kd) {
  if (n == 2) {
    // periodic trapezoid in phi, even node count
    std::size_t m = static_cast<std::size_t>(std::ceil(1.1 * kd)) + 32;
    m += m % 2;
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += std::cos(kd * std::cos(2.0 * pi * j / m));
    return 2.0 * pi * s / m;
  }
  // 2 pi int_{-1}^{1} cos(kd u) du, composite 16-point Gauss-Legendre
  static const auto rule = quad::cached_gauss_legendre(16);
  const std::size_t panels = static_cast<std::size_t>(std::ceil(kd / pi)) + 1;
  const double h = 2.0 / panels;
  double s = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double c = -1.0 + (i + 0.5) * h;
    double ps = 0.0;
    for (std::size_t j = 0; j < rule->x.size(); ++j) ps += rule->w[j] * std::cos(kd * (c + 0.5 * h * rule->x[j]));
    s += 0.5 * h * ps;
  }
  return 2.0 * pi * s;
}

inline CausalClass classify(const PairConfig& p) {
  if (!p.smearing.compact() || !p.switching.compact()) return CausalClass::Unclassified;
  return profiles::causal_class(p);
}

}  // namespace detail

inline Estimate<double> compute_L(const PairConfig& p, const QuadratureSettings& q) {
  p.validate();
  q.validate();
  if (p.field != FieldModel::Scalar) throw ConfigError("compute_L requires the scalar field");
  const int n = p.dim.n();
  const double decay = (n - 2) + detail::smearing_decay(p.smearing) + detail::local_decay(p.switching);
  if (decay >= -1.0) throw Divergence("local term is ultraviolet divergent for this smearing and switching");
  const double half_area = 0.5 * specfun::sphere_area(p.dim);
  auto f = [&](double k) -> double {
    if (k == 0.0 && n > 2) return 0.0;
    const double w = std::pow(k, n - 2) * profiles::smearing_fourier_sq(p.smearing, k);
    if (w == 0.0) return 0.0;
    return w * half_area * kernels::t_local(p.switching, k, p.gap).value.real();
  };
  auto plan = detail::plan_for(p);
  plan.osc_length = p.switching.support_length() + (p.smearing.family == SmearingFamily::PointLike ? 0.0 : p.smearing.scale);
  const auto r = detail::momentum_integral<double>(f, plan, q);
  const double l2 = p.coupling * p.coupling;
  return {l2 * r.value, l2 * r.error};
}

inline Estimate<cplx> compute_M(const PairConfig& p, const QuadratureSettings& q, Route route = Route::Reduced) {
  p.validate();
  q.validate();
  if (p.field != FieldModel::Scalar) throw ConfigError("compute_M requires the scalar field");
  const int n = p.dim.n();
  if (route == Route::Direct && n > 3) throw ConfigError("the direct route supports n = 2 and n = 3 only");
  const double spatial = p.separation > 0.0 ? -(n - 1) / 2.0 : 0.0;
  const double decay = (n - 2) + detail::smearing_decay(p.smearing) + detail::nonlocal_decay(p.switching, p.delay) + spatial;
  if (decay >= -1.0) {
    throw NonConvergence("nonlocal integrand envelope decays too slowly for the momentum tail criterion");
  }
  const kernels::NonlocalKernel kernel(p.switching, p.gap, p.delay);
  const double area = specfun::sphere_area(p.dim);
  const double d = p.separation;
  auto f = [&](double k) -> cplx {
    if (k == 0.0 && n > 2) return 0.0;
    const double w = std::pow(k, n - 2) * profiles::smearing_fourier_sq(p.smearing, k);
    if (w == 0.0) return 0.0;
    const double ang = route == Route::Reduced ? area * specfun::hyp0f1_half_n(p.dim, k * d)
                                                : detail::angular_direct(n, k * d);
    return -0.5 * w * ang * kernel(k).value;
  };
  const auto r = detail::momentum_integral<cplx>(f, detail::plan_for(p), q);
  const double l2 = p.coupling * p.coupling;
  return {l2 * r.value, l2 * r.error};
}

inline HarvestResult compute_delta(const PairConfig& p, const QuadratureSettings& q) {
  p.validate();
  q.validate();
  if (p.switching.family != SwitchingFamily::DeltaIdeal) throw ConfigError("compute_delta requires ideal delta switching");
  if (p.field != FieldModel::Scalar) throw ConfigError("delta switching is defined for the scalar field");
  const int n = p.dim.n();
  if ((n - 2) + detail::smearing_decay(p.smearing) >= -1.0) {
    throw Divergence("local term under delta switching is ultraviolet divergent for this smearing");
  }
  const double half_area = 0.5 * specfun::sphere_area(p.dim);
  const double eta = p.switching.strength, ta = p.switching.start, tb = ta + p.delay, d = p.separation;
  auto weight = [&](double k) -> double {
    if (k == 0.0 && n > 2) return 0.0;
    return std::pow(k, n - 2) * profiles::smearing_fourier_sq(p.smearing, k) * half_area;
  };
  auto fl = [&](double k) { return weight(k) * eta * eta; };
  auto fm = [&](double k) -> cplx {
    const double w = weight(k);
    if (w == 0.0) return 0.0;
    return -w * specfun::hyp0f1_half_n(p.dim, k * d) * kernels::delta_kernel(ta, tb, p.gap, k, eta);
  };
  auto plan = detail::plan_for(p);
  auto lplan = plan;
  lplan.osc_length = p.smearing.scale;
  const double l2 = p.coupling * p.coupling;
  HarvestResult out;
  const auto rl = detail::momentum_integral<double>(fl, lplan, q);
  out.L = l2 * rl.value;
  out.L_error = l2 * rl.error;
  if (d == 0.0 && ta == tb) {
    out.M = -std::exp(cplx(0.0, 2.0 * p.gap * ta)) * out.L;
    out.M_error = out.L_error;
  } else {
    const auto rm = detail::momentum_integral<cplx>(fm, plan, q);
    out.M = l2 * rm.value;
    out.M_error = l2 * rm.error;
  }
  out.N2 = negativity(out.L, out.M);
  out.causal = detail::classify(p);
  return out;
}

inline HarvestResult compute_em(const PairConfig& p, const QuadratureSettings& q) {
  p.validate();
  q.validate();
  if (p.field != FieldModel::EM2s2p) throw ConfigError("compute_em requires the 2s-2p field model");
  const kernels::NonlocalKernel kernel(p.switching, 0.0, p.delay);
  const double cos_angle = detail::angular_cos(p.angle);
  const double d = p.separation;
  auto form = [&](double k) { return k * k * k * profiles::smearing_fourier_sq(p.smearing, k); };
  auto fl = [&](double k) { return form(k) * kernels::t_local(p.switching, k, 0.0).value.real(); };
  auto fm = [&](double k) -> cplx {
    const double w = form(k);
    if (w == 0.0) return 0.0;
    return -w * kernel(k).value * specfun::bessel_kernel_bound_check(k * d);
  };
  auto plan = detail::plan_for(p);
  auto lplan = plan;
  lplan.osc_length = p.switching.support_length() + p.smearing.scale;
  const double e2 = p.em_coupling;
  HarvestResult out;
  const auto rl = detail::momentum_integral<double>(fl, lplan, q);
  out.L = e2 * rl.value;
  out.L_error = e2 * rl.error;
  if (cos_angle == 0.0) {
    out.M = 0.0;
  } else {
    const auto rm = detail::momentum_integral<cplx>(fm, plan, q);
    out.M = e2 * cos_angle * rm.value;
    out.M_error = e2 * std::abs(cos_angle) * rm.error;
  }
  out.N2 = negativity(out.L, out.M);
  out.causal = CausalClass::Unclassified;
  return out;
}

// Single evaluation for any supported configuration.
inline HarvestResult compute(const PairConfig& p, const QuadratureSettings& q, Route route = Route::Reduced) {
  p.validate();
  if (p.field == FieldModel::EM2s2p) return compute_em(p, q);
  if (p.switching.family == SwitchingFamily::DeltaIdeal) return compute_delta(p, q);
  HarvestResult out;
  const auto l = compute_L(p, q);
  const auto m = compute_M(p, q, route);
  out.L = l.value;
  out.L_error = l.error;
  out.M = m.value;
  out.M_error = m.error;
  out.N2 = negativity(out.L, out.M);
  out.causal = detail::classify(p);
  out.route = route;
  return out;
}

enum class SweepAxis { Gap, Separation, Delay, Angle };

struct SweepPoint {
  double axis_value = 0.0;
  std::optional<HarvestResult> result;
  std::string error;  // empty when result is present
};

inline PairConfig with_axis(PairConfig p, SweepAxis axis, double v) {
  switch (axis) {
    case SweepAxis::Gap: p.gap = v; break;
    case SweepAxis::Separation: p.separation = v; break;
    case SweepAxis::Delay: p.delay = v; break;
    case SweepAxis::Angle: p.angle = v; break;
  }
  return p;
}

inline std::vector<SweepPoint> sweep(const PairConfig& base, SweepAxis axis, const std::vector<double>& grid,
                                     const QuadratureSettings& q, Route route = Route::Reduced,
                                     unsigned threads = 1) {
  if (grid.empty()) throw ConfigError("sweep grid must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("sweep grid must be strictly increasing");
  }
  std::vector<SweepPoint> out(grid.size());
  auto run = [&](std::size_t i) {
    out[i].axis_value = grid[i];
    try {
      out[i].result = compute(with_axis(base, axis, grid[i]), q, route);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < grid.size(); i = next++) run(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace engine
}  // namespace harvest
