#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "harvest/engine.hpp"
#include "harvest/kernels.hpp"
#include "harvest/oracles.hpp"
#include "harvest/profiles.hpp"
#include "harvest/specfun.hpp"

namespace harvest::verify {

using specfun::pi;

enum class Suite { NonOverlap, OverlapSpacelike, Delta, Identities, Regularizations, EM, All };

inline std::string to_string(Suite s) {
  switch (s) {
    case Suite::NonOverlap: return "NonOverlap";
    case Suite::OverlapSpacelike: return "OverlapSpacelike";
    case Suite::Delta: return "Delta";
    case Suite::Identities: return "Identities";
    case Suite::Regularizations: return "Regularizations";
    case Suite::EM: return "EM";
    case Suite::All: return "All";
  }
  return "";
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Times a check body and records exceptions as failures.
inline Check timed(const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  c.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

class Sampler {
public:
  explicit Sampler(std::uint64_t seed, std::uint64_t stream) : gen_(oracles::splitmix64(seed ^ oracles::splitmix64(stream))) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }

private:
  std::mt19937_64 gen_;
};

inline QuadratureSettings default_settings() { return QuadratureSettings{}; }

// ---------------------------------------------------------------------------------------------
// configuration samplers

inline SwitchingSpec random_compact_switching(Sampler& s, SwitchingFamily fam) {
  SwitchingSpec sw;
  sw.family = fam;
  sw.duration = s.uniform(0.5, 2.0);
  sw.start = s.uniform(-1.0, 1.0);
  return sw;
}

inline PairConfig non_overlap_config(Sampler& s) {
  PairConfig p;
  const int n = s.integer(2, 4);
  p.dim = SphereDim(n);
  p.coupling = s.uniform(0.1, 2.0);
  p.gap = 0.0;
  const int fam = s.integer(0, 2);
  p.smearing.family = fam == 0 ? SmearingFamily::PointLike : fam == 1 ? SmearingFamily::GaussianBall : SmearingFamily::TopHatBall;
  p.smearing.scale = s.uniform(0.1, 1.0);
  p.smearing.dimension = n;
  // point-like detectors take the smooth switching: with a top hat the local integrand falls only like
  // k^{n-4}, divergent for n >= 3 and too slow for the tail criterion at n = 2
  const bool smooth = p.smearing.family == SmearingFamily::PointLike || s.chance(0.5);
  p.switching = random_compact_switching(s, smooth ? SwitchingFamily::CosineBump : SwitchingFamily::TopHat);
  const double T = p.switching.duration;
  p.delay = (s.chance(0.5) ? 1.0 : -1.0) * T * s.uniform(1.01, 3.0);
  p.separation = s.chance(0.2) ? 0.0 : s.uniform(0.0, 4.0);
  return p;
}

inline PairConfig spacelike_overlap_config(Sampler& s, int n_lo = 2, int n_hi = 4) {
  PairConfig p;
  const int n = s.integer(n_lo, n_hi);
  p.dim = SphereDim(n);
  p.coupling = s.uniform(0.1, 2.0);
  p.gap = 0.0;
  p.switching = random_compact_switching(s, s.chance(0.5) ? SwitchingFamily::CosineBump : SwitchingFamily::TopHat);
  const double T = p.switching.duration;
  p.delay = s.uniform(-T, T);
  p.smearing.family = SmearingFamily::TopHatBall;
  p.smearing.scale = s.uniform(0.05, 1.0);
  p.smearing.dimension = n;
  p.separation = p.smearing.scale + std::abs(p.delay) + T + s.uniform(0.01, 3.0);
  return p;
}

// ---------------------------------------------------------------------------------------------
// No-go I

inline Check check_kernel_bound(std::uint64_t seed, int triples = 200) {
  return timed("kernel bound |T_dt| <= T_L, non-overlap", [&](Check& c) {
    Sampler s(seed, 11);
    double worst = 0.0, worst_eq = 0.0;
    for (int i = 0; i < triples; ++i) {
      const auto sw = random_compact_switching(s, s.chance(0.5) ? SwitchingFamily::CosineBump : SwitchingFamily::TopHat);
      const double k = s.uniform(0.0, 50.0);
      const double dt = (s.chance(0.5) ? 1.0 : -1.0) * sw.duration * s.uniform(1.0, 3.0);
      const double tl = kernels::t_local(sw, k, 0.0).value.real();
      const double tn = std::abs(kernels::t_nonlocal(sw, k, 0.0, dt).value);
      worst = std::max(worst, (tn - tl) / tl);
      worst_eq = std::max(worst_eq, std::abs(tn - tl) / tl);
    }
    c.pass = worst <= 1e-12 && worst_eq <= 1e-10;
    c.detail = fmt("%.0f triples, max (|T_dt| - T_L)/T_L = %.3g, max | |T_dt| - T_L |/T_L = %.3g", triples, worst, worst_eq);
  });
}

inline Check check_no_go_I(std::uint64_t seed, int configs = 120) {
  return timed("No-go I: non-overlapping gapless switchings", [&](Check& c) {
    Sampler s(seed, 13);
    const auto q = default_settings();
    int bad = 0, timelike = 0, coincident = 0;
    double worst = 0.0;
    for (int i = 0; i < configs; ++i) {
      const auto p = non_overlap_config(s);
      const auto r = engine::compute(p, q);
      const double ratio = std::abs(r.M) / r.L;
      worst = std::max(worst, ratio);
      if (!(std::abs(r.M) <= r.L * (1.0 + 1e-6)) || r.N2 != 0.0) ++bad;
      if (r.causal == CausalClass::Timelike) ++timelike;
      if (p.separation == 0.0) ++coincident;
    }
    c.pass = bad == 0;
    c.detail = std::to_string(configs) + " configs (" + std::to_string(coincident) + " at d = 0, " +
               std::to_string(timelike) + " timelike), violations " + std::to_string(bad) +
               fmt(", max |M|/L = %.6f", worst);
  });
}

// ---------------------------------------------------------------------------------------------
// No-go II and reality

inline Check check_no_go_II(std::uint64_t seed, int configs = 110) {
  return timed("No-go II: overlapping gapless spacelike detectors", [&](Check& c) {
    Sampler s(seed, 17);
    const auto q = default_settings();
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < configs; ++i) {
      const auto p = spacelike_overlap_config(s);
      if (profiles::causal_class(p) != CausalClass::Spacelike) throw Error("sampler produced a non-spacelike config");
      const auto r = engine::compute(p, q);
      worst = std::max(worst, std::abs(r.M) / r.L);
      if (!(std::abs(r.M) <= r.L * (1.0 + 1e-6)) || r.N2 != 0.0) ++bad;
    }
    c.pass = bad == 0;
    c.detail = std::to_string(configs) + " configs, violations " + std::to_string(bad) + fmt(", max |M|/L = %.3g", worst);
  });
}

inline Check check_reality(std::uint64_t seed, int configs = 20) {
  return timed("micro-causality: Im M vanishes for spacelike pairs", [&](Check& c) {
    Sampler s(seed, 19);
    const auto q = default_settings();
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < configs; ++i) {
      auto p = spacelike_overlap_config(s);
      const auto m = engine::compute_M(p, q);
      const double bound = std::max(1e-4 * std::abs(m.value), 10.0 * m.error);
      worst = std::max(worst, std::abs(m.value.imag()) / bound);
      if (!(std::abs(m.value.imag()) <= bound)) ++bad;
    }
    c.pass = bad == 0;
    c.detail = std::to_string(configs) + " configs, violations " + std::to_string(bad) +
               fmt(", max |Im M| / bound = %.3g", worst);
  });
}

// ---------------------------------------------------------------------------------------------
// No-go III

inline Check check_no_go_III(std::uint64_t seed, int configs = 200) {
  return timed("No-go III: delta switching", [&](Check& c) {
    Sampler s(seed, 23);
    const auto q = default_settings();
    int bad = 0, simultaneous = 0;
    for (int i = 0; i < configs; ++i) {
      PairConfig p;
      const int n = s.integer(2, 4);
      p.dim = SphereDim(n);
      p.coupling = s.uniform(0.1, 2.0);
      p.switching.family = SwitchingFamily::DeltaIdeal;
      p.switching.strength = s.uniform(0.2, 2.0);
      p.gap = s.uniform(0.0, 10.0 / p.switching.strength);
      p.switching.start = s.uniform(-3.0, 3.0);
      p.delay = s.chance(0.1) ? 0.0 : s.uniform(-3.0, 3.0);
      p.separation = s.chance(0.1) ? 0.0 : s.uniform(0.0, 5.0);
      p.smearing.family = SmearingFamily::GaussianBall;
      p.smearing.scale = s.uniform(0.2, 1.0);
      p.smearing.dimension = n;
      if (p.delay == 0.0) ++simultaneous;
      const auto r = engine::compute(p, q);
      if (r.N2 != 0.0) ++bad;
    }
    c.pass = bad == 0;
    c.detail = std::to_string(configs) + " configs (" + std::to_string(simultaneous) + " simultaneous), N2 != 0 in " +
               std::to_string(bad);
  });
}

inline Check check_delta_divergence() {
  return timed("delta switching with point-like smearing is rejected", [&](Check& c) {
    int rejected = 0;
    for (int n = 2; n <= 4; ++n) {
      PairConfig p;
      p.dim = SphereDim(n);
      p.switching.family = SwitchingFamily::DeltaIdeal;
      p.smearing.family = SmearingFamily::PointLike;
      p.smearing.dimension = n;
      try {
        engine::compute(p, default_settings());
      } catch (const Divergence&) {
        ++rejected;
      }
    }
    c.pass = rejected == 3;
    c.detail = std::to_string(rejected) + "/3 dimensions raise a divergence";
  });
}

// ---------------------------------------------------------------------------------------------
// Identities

inline Check check_appendix_A(std::uint64_t seed, std::uint64_t samples = 1000000, unsigned threads = 1) {
  return timed("Appendix A: MC angular integral vs 0F1", [&](Check& c) {
    int bad = 0;
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n) {
      for (double kd : {0.5, 2.0, 5.0, 20.0}) {
        const SphereDim d(n);
        const auto rep = oracles::mc_angular_plane_wave(d, kd, samples, seed + 101 * n, threads);
        const double exact = specfun::sphere_area(d) * specfun::hyp0f1_half_n(d, kd);
        const double z = std::abs(rep.value.real() - exact) / rep.statistical_error;
        worst = std::max(worst, z);
        if (!(z <= 3.0)) ++bad;
      }
    }
    c.pass = bad == 0;
    c.detail = fmt("16 cases at %.0f samples, max deviation %.2f standard errors", static_cast<double>(samples), worst) +
               ", outside 3 SE: " + std::to_string(bad);
  });
}

inline Check check_mc_unbiased(std::uint64_t seed) {
  return timed("MC estimator unbiased over 50 seeds", [&](Check& c) {
    const SphereDim d(3);
    const double exact = specfun::sphere_area(d) * specfun::hyp0f1_half_n(d, 2.0);
    double sum = 0.0, se2 = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto rep = oracles::mc_angular_plane_wave(d, 2.0, 100000, seed + 7919 * (i + 1));
      sum += rep.value.real();
      se2 += rep.statistical_error * rep.statistical_error;
    }
    const double mean = sum / 50.0, pooled = std::sqrt(se2) / 50.0;
    const double z = std::abs(mean - exact) / pooled;
    c.pass = z < 4.0;
    c.detail = fmt("mean deviation %.2f pooled standard errors", z);
  });
}

inline Check check_appendix_BC(kernels::NestedStrategy strategy) {
  const std::string how = strategy == kernels::NestedStrategy::Auto ? "closed form" : "nested quadrature";
  return timed("Appendix B/C: Re T_dt = 2 pi |X|^2 cos(k dt), " + how, [&](Check& c) {
    int bad = 0, points = 0;
    double worst = 0.0;
    for (auto fam : {SwitchingFamily::TopHat, SwitchingFamily::CosineBump}) {
      SwitchingSpec sw;
      sw.family = fam;
      sw.duration = 1.0;
      sw.start = 0.3;
      for (int i = 0; i < 20; ++i) {
        const double k = 0.05 + 0.5 * i + 0.013 * i * i;
        const double scale = 2.0 * pi * std::norm(profiles::switching_fourier(sw, k));
        for (int j = 0; j < 20; ++j) {
          const double dt = -2.0 + 4.0 * j / 19.0;
          const double lhs = kernels::t_nonlocal(sw, k, 0.0, dt, strategy).value.real();
          const double dev = std::abs(lhs - kernels::re_t_closed(sw, k, dt)) / scale;
          worst = std::max(worst, dev);
          if (!(dev <= 1e-8)) ++bad;
          ++points;
        }
      }
    }
    c.pass = bad == 0;
    c.detail = std::to_string(points) + " grid points, max deviation " + fmt("%.3g", worst) +
               " x 2 pi |X|^2, outside 1e-8: " + std::to_string(bad);
  });
}

inline Check check_appendix_B_random(std::uint64_t seed, int samples = 50) {
  return timed("Appendix B: Re T_0 = T_L for random switchings", [&](Check& c) {
    Sampler s(seed, 29);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const auto sw = random_compact_switching(s, s.chance(0.5) ? SwitchingFamily::CosineBump : SwitchingFamily::TopHat);
      const double k = s.uniform(0.0, 20.0);
      const double tl = kernels::t_local(sw, k, 0.0).value.real();
      const double re = kernels::t_nonlocal(sw, k, 0.0, 0.0, kernels::NestedStrategy::Adaptive).value.real();
      worst = std::max(worst, std::abs(re - tl) / tl);
    }
    c.pass = worst <= 1e-8;
    c.detail = std::to_string(samples) + fmt(" samples, max relative deviation %.3g", worst);
  });
}

inline Check check_scaling(std::uint64_t seed) {
  return timed("coupling scaling: L, |M| scale as lambda^2", [&](Check& c) {
    Sampler s(seed, 31);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      auto p = spacelike_overlap_config(s, 3, 3);
      p.separation = s.uniform(0.0, 1.0);
      const auto r1 = engine::compute(p, default_settings());
      p.coupling *= 2.0;
      const auto r2 = engine::compute(p, default_settings());
      worst = std::max({worst, std::abs(r2.L / r1.L - 4.0), std::abs(std::abs(r2.M) / std::abs(r1.M) - 4.0)});
    }
    c.pass = worst <= 1e-12;
    c.detail = fmt("max |ratio - 4| = %.3g", worst);
  });
}

inline PairConfig route_config(Sampler& s) {
  PairConfig p;
  const int n = s.integer(2, 3);
  p.dim = SphereDim(n);
  p.coupling = s.uniform(0.5, 1.5);
  p.gap = s.chance(0.5) ? 0.0 : s.uniform(0.0, 4.0);
  p.switching = random_compact_switching(s, s.chance(0.5) ? SwitchingFamily::CosineBump : SwitchingFamily::TopHat);
  p.delay = s.uniform(-1.5, 1.5) * p.switching.duration;
  p.smearing.family = s.chance(0.5) ? SmearingFamily::GaussianBall : SmearingFamily::TopHatBall;
  p.smearing.scale = s.uniform(0.2, 1.0);
  p.smearing.dimension = n;
  p.separation = s.uniform(0.0, 2.0);
  return p;
}

inline Check check_routes(std::uint64_t seed, int configs = 20) {
  return timed("route agreement: reduced vs direct angular integration", [&](Check& c) {
    Sampler s(seed, 37);
    double worst = 0.0;
    for (int i = 0; i < configs; ++i) {
      const auto p = route_config(s);
      const auto red = engine::compute_M(p, default_settings(), Route::Reduced);
      const auto dir = engine::compute_M(p, default_settings(), Route::Direct);
      worst = std::max(worst, std::abs(red.value - dir.value) / std::abs(red.value));
    }
    c.pass = worst <= 1e-5;
    c.detail = std::to_string(configs) + fmt(" configs (n = 2, 3), max relative difference %.3g", worst);
  });
}

inline Check check_brute_force(std::uint64_t seed, int configs = 10, std::size_t resolution = 240) {
  return timed("engine vs unreduced brute-force quadrature", [&](Check& c) {
    Sampler s(seed, 41);
    double worst = 0.0;
    int bad = 0;
    for (int i = 0; i < configs; ++i) {
      PairConfig p;
      p.dim = SphereDim(3);
      p.coupling = 1.0;
      p.gap = s.chance(0.5) ? 0.0 : s.uniform(0.0, 3.0);
      p.switching = random_compact_switching(s, SwitchingFamily::CosineBump);
      p.switching.duration = s.uniform(0.8, 1.5);
      p.delay = s.uniform(-1.5, 1.5) * p.switching.duration;
      p.smearing.family = SmearingFamily::GaussianBall;
      p.smearing.scale = s.uniform(0.3, 0.8);
      p.separation = s.uniform(0.0, 2.0);
      const auto m = engine::compute_M(p, default_settings());
      const auto bf = oracles::brute_force_M(p, resolution);
      const double diff = std::abs(m.value - bf.value);
      const double allowed = std::max(1e-3 * std::abs(m.value), 3.0 * (m.error + bf.quadrature_error));
      worst = std::max(worst, diff / allowed);
      if (!(diff <= allowed)) ++bad;
    }
    c.pass = bad == 0;
    c.detail = std::to_string(configs) + " n = 3 configs, max difference / allowed = " + fmt("%.3g", worst) +
               ", failures " + std::to_string(bad);
  });
}

// Gapped, overlapping, causally connected pair found by gap and separation sweeps.
inline PairConfig positive_control() {
  PairConfig p;
  p.dim = SphereDim(3);
  p.coupling = 1.0;
  p.gap = 4.0;
  p.switching.family = SwitchingFamily::CosineBump;
  p.switching.duration = 1.0;
  p.switching.start = 0.0;
  p.delay = 0.0;
  p.separation = 0.5;
  p.smearing.family = SmearingFamily::TopHatBall;
  p.smearing.scale = 0.1;
  p.smearing.dimension = 3;
  return p;
}

inline constexpr double positive_control_N2 = 0.0063557424825857901;

inline Check check_positive_control() {
  return timed("positive control: gapped causally connected pair harvests", [&](Check& c) {
    const auto p = positive_control();
    const auto r = engine::compute(p, default_settings());
    const double lam2 = p.coupling * p.coupling;
    const double drift = std::abs(r.N2 - positive_control_N2) / positive_control_N2;
    c.pass = r.N2 > 1e-6 * lam2 && drift <= 1e-6 && p.gap > 0.0 && std::abs(p.delay) < p.switching.duration;
    c.detail = fmt("N2 = %.10g lambda^2 (pinned %.10g), class ", r.N2 / lam2, positive_control_N2) + to_string(r.causal);
  });
}

// ---------------------------------------------------------------------------------------------
// Regularizations

inline std::vector<double> regulator_ladder() {
  std::vector<double> e;
  for (int i = 0; i <= 6; ++i) e.push_back(std::pow(10.0, -1.0 - 0.5 * i));
  return e;
}

inline Check check_regularization(kernels::DeltaRegularization kind, double final_bound) {
  const std::string name = kind == kernels::DeltaRegularization::TopHatReg ? "top-hat" : "Gaussian";
  return timed("delta regularization limit, " + name, [&](Check& c) {
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity(), last = 0.0;
    for (double eps : regulator_ladder()) {
      const double dev = std::abs(kernels::regularized_delta_T0(kind, eps, eps, 1.0, 1.0) - 1.0);
      monotone = monotone && dev < prev;
      prev = last = dev;
    }
    c.pass = monotone && last <= final_bound;
    c.detail = std::string(monotone ? "monotone" : "not monotone") + fmt(", |T0 - 1| at eps = 1e-4: %.3g (bound %.0e)", last, final_bound);
  });
}

// Same nested integral by two-dimensional adaptive quadrature of the regularized profiles.
inline cplx regularized_T0_quadrature(kernels::DeltaRegularization kind, double eps, double eps_prime, double k,
                                      double gap) {
  SwitchingSpec s1, s2;
  s1.family = s2.family = kind == kernels::DeltaRegularization::TopHatReg ? SwitchingFamily::TopHatRegDelta
                                                                            : SwitchingFamily::GaussianRegDelta;
  s1.regulator = eps;
  s2.regulator = eps_prime;
  const double w1 = kind == kernels::DeltaRegularization::TopHatReg ? 0.5 * eps : 20.0 * eps;
  const double w2 = kind == kernels::DeltaRegularization::TopHatReg ? 0.5 * eps_prime : 20.0 * eps_prime;
  auto f1 = [&](double t) { return profiles::switching_value(s1, t); };
  auto f2 = [&](double t) { return profiles::switching_value(s2, t); };
  const auto e = kernels::nested_adaptive(f1, -w1, w1, f2, -w2, w2, k - gap, k + gap);
  return 2.0 * e.value;
}

inline Check check_gaussian_closed_form() {
  return timed("Gaussian-regularized closed form vs 2-D quadrature at eps = 0.05", [&](Check& c) {
    double worst = 0.0;
    for (double ep : {0.05, 0.03, 0.08}) {
      for (auto [k, gap] : {std::pair{1.0, 1.0}, std::pair{3.0, 0.5}, std::pair{0.5, 2.0}}) {
        const cplx cf = kernels::regularized_delta_T0(kernels::DeltaRegularization::GaussianReg, 0.05, ep, k, gap);
        const cplx qd = regularized_T0_quadrature(kernels::DeltaRegularization::GaussianReg, 0.05, ep, k, gap);
        worst = std::max(worst, std::abs(cf - qd) / std::abs(qd));
      }
    }
    c.pass = worst <= 1e-6;
    c.detail = fmt("eps = 0.05, eps' in {0.03, 0.05, 0.08}, max relative difference %.3g", worst);
  });
}

// ---------------------------------------------------------------------------------------------
// EM

inline Check check_em_no_go(std::uint64_t seed, int configs = 50) {
  return timed("EM 2s-2p no-go beyond the effective spacelike margin", [&](Check& c) {
    Sampler s(seed, 43);
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < configs; ++i) {
      PairConfig p;
      p.dim = SphereDim(3);
      p.field = FieldModel::EM2s2p;
      p.smearing.family = SmearingFamily::Hydrogen2s2p;
      p.smearing.scale = 1.0;
      p.switching = random_compact_switching(s, s.chance(0.5) ? SwitchingFamily::CosineBump : SwitchingFamily::TopHat);
      p.switching.duration = s.uniform(5.0, 40.0);
      p.delay = s.uniform(-1.0, 1.0) * p.switching.duration;
      p.angle = s.uniform(0.0, pi);
      p.separation = 0.0;
      const double need = -profiles::effective_spacelike_margin(p, 1e-9);
      p.separation = need + s.uniform(0.1, 20.0);
      if (!(profiles::effective_spacelike_margin(p, 1e-9) > 0.0)) throw Error("EM sampler margin not positive");
      const auto r = engine::compute_em(p, default_settings());
      worst = std::max(worst, std::abs(r.M) / r.L);
      if (r.N2 != 0.0) ++bad;
    }
    c.pass = bad == 0;
    c.detail = std::to_string(configs) + " configs, N2 != 0 in " + std::to_string(bad) + fmt(", max |M|/L = %.3g", worst);
  });
}

inline Check check_em_overlap() {
  return timed("hydrogenic overlap at d = 190 a0", [&](Check& c) {
    const double v = profiles::log10_wavefunction_overlap(190.0, 1.0);
    c.pass = std::abs(v + 82.5) <= 1.5;
    c.detail = fmt("log10 overlap = %.3f (target -82.5 +- 1.5)", v);
  });
}

// ---------------------------------------------------------------------------------------------

struct Options {
  std::uint64_t seed = 20190612;
  unsigned threads = 1;
};

inline std::vector<Check> run(Suite suite, const Options& o) {
  std::vector<Check> out;
  auto want = [&](Suite s) { return suite == Suite::All || suite == s; };
  if (want(Suite::NonOverlap)) {
    out.push_back(check_kernel_bound(o.seed));
    out.push_back(check_no_go_I(o.seed));
  }
  if (want(Suite::OverlapSpacelike)) {
    out.push_back(check_no_go_II(o.seed));
    out.push_back(check_reality(o.seed));
  }
  if (want(Suite::Delta)) {
    out.push_back(check_no_go_III(o.seed));
    out.push_back(check_delta_divergence());
  }
  if (want(Suite::Identities)) {
    out.push_back(check_appendix_A(o.seed, 1000000, o.threads));
    out.push_back(check_mc_unbiased(o.seed));
    out.push_back(check_appendix_BC(kernels::NestedStrategy::Auto));
    out.push_back(check_appendix_BC(kernels::NestedStrategy::Adaptive));
    out.push_back(check_appendix_B_random(o.seed));
    out.push_back(check_scaling(o.seed));
    out.push_back(check_routes(o.seed));
    out.push_back(check_brute_force(o.seed));
    out.push_back(check_positive_control());
  }
  if (want(Suite::Regularizations)) {
    out.push_back(check_regularization(kernels::DeltaRegularization::TopHatReg, 1e-3));
    out.push_back(check_regularization(kernels::DeltaRegularization::GaussianReg, 1e-6));
    out.push_back(check_gaussian_closed_form());
  }
  if (want(Suite::EM)) {
    out.push_back(check_em_no_go(o.seed));
    out.push_back(check_em_overlap());
  }
  return out;
}

}  // namespace harvest::verify
