#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include "harvest/errors.hpp"
#include "harvest/profiles.hpp"
#include "harvest/quadrature.hpp"
#include "harvest/specfun.hpp"

namespace harvest::kernels {

using specfun::pi;

enum class KernelMethod { ClosedForm, AdaptiveNested };

struct TimeKernelResult {
  cplx value;
  double abs_error_estimate = 0.0;
  KernelMethod method = KernelMethod::ClosedForm;
};

enum class NestedStrategy { Auto, Adaptive };

struct NestedTolerance {
  double rel = 1e-12;
  double abs = 1e-15;
  std::size_t max_subdivisions = 400;
};

namespace detail {

// exp divided difference e[a, b]
inline cplx dd2(cplx a, cplx b) { return std::exp(a) * specfun::phi1(b - a); }

// exp divided difference e[z0, z1, z2]
inline cplx dd3(cplx z0, cplx z1, cplx z2) {
  const double d01 = std::abs(z1 - z0), d02 = std::abs(z2 - z0), d12 = std::abs(z2 - z1);
  const double diam = std::max({d01, d02, d12});
  if (diam < 1.0) {
    // e^c sum_m h_m(z - c) / (m + 2)!, h_m complete homogeneous in three variables
    const cplx c = (z0 + z1 + z2) / 3.0;
    const cplx x = z0 - c, y = z1 - c, z = z2 - c;
    cplx h1 = 1.0, h2 = 1.0, h3 = 1.0;
    double inv_fact = 0.5;
    cplx sum = inv_fact;
    for (int m = 1; m < 60; ++m) {
      h1 *= x;
      h2 = h2 * y + h1;
      h3 = h3 * z + h2;
      inv_fact /= (m + 2.0);
      const cplx add = h3 * inv_fact;
      sum += add;
      if (m >= 2 && std::abs(add) < 1e-18 * std::abs(sum)) break;  // h_1 vanishes about the mean
    }
    return std::exp(c) * sum;
  }
  // farthest pair as the outer nodes
  if (d02 >= d01 && d02 >= d12) return (dd2(z1, z2) - dd2(z0, z1)) / (z2 - z0);
  if (d01 >= d12) return (dd2(z2, z1) - dd2(z0, z2)) / (z1 - z0);
  return (dd2(z0, z2) - dd2(z1, z0)) / (z2 - z1);
}

// int_x^y e^{i p t} dt
inline cplx exp_integral(double p, double x, double y) {
  const double h = y - x;
  return std::exp(cplx(0.0, p * x)) * h * specfun::phi1(cplx(0.0, p * h));
}

// int_{lo1}^{hi1} dt1 e^{i p t1} int_{lo2}^{min(hi2, t1)} dt2 e^{i q t2}
inline cplx nested_exp(double p, double q, double lo1, double hi1, double lo2, double hi2) {
  cplx out = 0.0;
  const double u0 = std::max(lo1, lo2), u1 = std::min(hi1, hi2);
  if (u1 > u0) {
    const double h = u1 - u0;
    out += exp_integral(p, u0, u1) * exp_integral(q, lo2, u0);
    out += std::exp(cplx(0.0, (p + q) * u0)) * h * h * dd3(0.0, cplx(0.0, p * h), cplx(0.0, (p + q) * h));
  }
  const double v0 = std::max(lo1, hi2);
  if (hi1 > v0) out += exp_integral(p, v0, hi1) * exp_integral(q, lo2, hi2);
  return out;
}

}  // namespace detail

// int dt1 X1(t1) e^{-i a t1} int_{-inf}^{t1} dt2 X2(t2) e^{i b t2}, both in exponential-sum form.
inline cplx nested_pair(const ExpSum& x1, const ExpSum& x2, double a, double b) {
  cplx out = 0.0;
  for (const auto& t1 : x1.terms) {
    const cplx c1 = t1.c * std::exp(cplx(0.0, -t1.w * x1.lo));
    for (const auto& t2 : x2.terms) {
      const cplx c2 = t2.c * std::exp(cplx(0.0, -t2.w * x2.lo));
      out += c1 * c2 * detail::nested_exp(t1.w - a, t2.w + b, x1.lo, x1.hi, x2.lo, x2.hi);
    }
  }
  return out;
}

struct NestedEstimate {
  cplx value;
  double error;
};

// Same nested integral by outer adaptive quadrature over t1 of inner adaptive quadrature over t2,
// for arbitrary profiles supported on [lo1, hi1] and [lo2, hi2].
inline NestedEstimate nested_adaptive(const std::function<double(double)>& f1, double lo1, double hi1,
                                      const std::function<double(double)>& f2, double lo2, double hi2, double a,
                                      double b, const NestedTolerance& tol = {}) {
  const double fmax = std::max(std::abs(a), std::abs(b));
  auto panels_for = [&](double len) -> std::size_t {
    if (fmax * len <= 50.0 || len <= 0.0) return 1;
    return static_cast<std::size_t>(std::ceil(len * fmax / pi));
  };
  quad::Tolerance inner_tol{tol.abs, tol.rel, 0.0, tol.max_subdivisions};
  double worst_inner = 0.0;
  bool ok = true;
  auto inner = [&](double t1) -> cplx {
    const double top = std::min(hi2, t1);
    if (top <= lo2) return 0.0;
    auto g = [&](double t2) { return f2(t2) * std::exp(cplx(0.0, b * t2)); };
    const auto r = quad::integrate<cplx>(g, lo2, top, inner_tol, panels_for(top - lo2));
    worst_inner = std::max(worst_inner, r.error);
    ok = ok && r.converged;
    return r.value;
  };
  auto outer = [&](double t1) { return f1(t1) * std::exp(cplx(0.0, -a * t1)) * inner(t1); };
  // Breakpoints where the inner upper limit starts and stops moving.
  std::vector<double> cuts = {lo1, hi1};
  for (double c : {lo2, hi2}) {
    if (c > lo1 && c < hi1) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  quad::Tolerance outer_tol{tol.abs, tol.rel, 0.0, tol.max_subdivisions};
  NestedEstimate est{0.0, 0.0};
  double env1 = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    const auto r = quad::integrate<cplx>(outer, cuts[i], cuts[i + 1], outer_tol, panels_for(cuts[i + 1] - cuts[i]));
    ok = ok && r.converged;
    est.value += r.value;
    est.error += r.error;
    auto absf1 = [&](double t) { return std::abs(f1(t)); };
    env1 += quad::integrate<double>(absf1, cuts[i], cuts[i + 1], outer_tol).value;
  }
  if (!ok) throw NonConvergence("nested time integral did not reach tolerance within the subdivision budget");
  est.error += env1 * worst_inner;
  return est;
}

// 2 pi |X(k + Omega)|^2.
inline TimeKernelResult t_local(const SwitchingSpec& s, double k, double gap) {
  if (!(k >= 0.0)) throw DomainError("t_local: k must be nonnegative");
  const cplx x = profiles::switching_fourier(s, k + gap);
  return {cplx(2.0 * pi * std::norm(x), 0.0), 0.0, KernelMethod::ClosedForm};
}

// eta^2 e^{-ik|tB - tA|} e^{i Omega (tA + tB)}; the simultaneous case takes the symmetric value.
inline cplx delta_kernel(double t_a, double t_b, double gap, double k, double eta) {
  if (!(k >= 0.0)) throw DomainError("delta_kernel: k must be nonnegative");
  return eta * eta * std::exp(cplx(0.0, -k * std::abs(t_b - t_a) + gap * (t_a + t_b)));
}

// Sum over both time orderings of the nested integral with a = k - Omega on t1 and b = k + Omega on t2,
// detector A starting at s.start and B delayed by `delay`.
class NonlocalKernel {
public:
  NonlocalKernel(const SwitchingSpec& s, double gap, double delay, NestedStrategy strategy = NestedStrategy::Auto,
                 NestedTolerance tol = {})
      : spec_(s), gap_(gap), delay_(delay), tol_(tol) {
    s.validate();
    // Start times are shifted so A starts at 0; the shift contributes e^{2 i Omega t_A}.
    a0_ = s.shifted(-s.start);
    b0_ = a0_.shifted(delay);
    shift_phase_ = std::exp(cplx(0.0, 2.0 * gap * s.start));
    if (s.family == SwitchingFamily::DeltaIdeal) {
      mode_ = Mode::Delta;
    } else if (s.family == SwitchingFamily::GaussianRegDelta) {
      mode_ = (strategy == NestedStrategy::Auto) ? Mode::GaussDelta : Mode::Adaptive;
    } else if (strategy == NestedStrategy::Adaptive) {
      mode_ = Mode::Adaptive;
    } else if (std::abs(delay) >= s.support_length()) {
      mode_ = Mode::Denested;
    } else {
      mode_ = Mode::ExpSumForm;
      ea_ = profiles::exp_sum(a0_);
      eb_ = profiles::exp_sum(b0_);
    }
  }

  TimeKernelResult operator()(double k) const {
    if (!(k >= 0.0)) throw DomainError("t_nonlocal: k must be nonnegative");
    const double a = k - gap_, b = k + gap_;
    switch (mode_) {
      case Mode::Delta:
        return {delta_kernel(spec_.start, spec_.start + delay_, gap_, k, spec_.strength), 0.0,
                KernelMethod::ClosedForm};
      case Mode::Denested: {
        // One ordering vanishes; the other factorizes into two transforms.
        const SwitchingSpec& first = delay_ > 0.0 ? b0_ : a0_;
        const SwitchingSpec& second = delay_ > 0.0 ? a0_ : b0_;
        const cplx v = 2.0 * pi * profiles::switching_fourier(first, -a) * profiles::switching_fourier(second, b);
        return {shift_phase_ * v, 0.0, KernelMethod::ClosedForm};
      }
      case Mode::ExpSumForm: {
        const cplx v = nested_pair(ea_, eb_, a, b) + nested_pair(eb_, ea_, a, b);
        return {shift_phase_ * v, 0.0, KernelMethod::ClosedForm};
      }
      case Mode::GaussDelta: {
        const cplx v = gauss_delta_order(0.0, delay_, a, b) + gauss_delta_order(delay_, 0.0, a, b);
        return {shift_phase_ * v, 0.0, KernelMethod::ClosedForm};
      }
      case Mode::Adaptive: break;
    }
    auto fa = [this](double t) { return profiles::switching_value(a0_, t); };
    auto fb = [this](double t) { return profiles::switching_value(b0_, t); };
    double la, ha, lb, hb;
    support(a0_, la, ha);
    support(b0_, lb, hb);
    const auto e1 = nested_adaptive(fa, la, ha, fb, lb, hb, a, b, tol_);
    const auto e2 = nested_adaptive(fb, lb, hb, fa, la, ha, a, b, tol_);
    return {shift_phase_ * (e1.value + e2.value), e1.error + e2.error, KernelMethod::AdaptiveNested};
  }

private:
  enum class Mode { Delta, Denested, ExpSumForm, GaussDelta, Adaptive };

  static void support(const SwitchingSpec& s, double& lo, double& hi) {
    if (s.family == SwitchingFamily::GaussianRegDelta) {
      lo = s.start - 20.0 * s.regulator;
      hi = s.start + 20.0 * s.regulator;
    } else {
      lo = s.support_begin();
      hi = s.support_end();
    }
  }

  // Ordering with t1 in the detector centred at c1 and t2 in the one centred at c2:
  // eta^2 e^{-i a c1 + i b c2} e^{-eps^2 (a^2 + b^2)} (1 + erf z)/2,
  // z = (c1 - c2)/(2 sqrt2 eps) - i eps (a + b)/sqrt2.
  cplx gauss_delta_order(double c1, double c2, double a, double b) const {
    const double eps = spec_.regulator, eta = spec_.strength;
    const double e = eps * eps * (a * a + b * b);
    const cplx z((c1 - c2) / (2.0 * std::sqrt(2.0) * eps), -eps * (a + b) / std::sqrt(2.0));
    const double y2 = z.imag() * z.imag();
    const cplx half_one_plus_erf = 0.5 * std::exp(-e) + 0.5 * std::exp(y2 - e) * specfun::detail::erf_scaled(z);
    return eta * eta * std::exp(cplx(0.0, -a * c1 + b * c2)) * half_one_plus_erf;
  }

  SwitchingSpec spec_, a0_, b0_;
  double gap_, delay_;
  NestedTolerance tol_;
  cplx shift_phase_;
  Mode mode_ = Mode::Adaptive;
  ExpSum ea_, eb_;
};

inline TimeKernelResult t_nonlocal(const SwitchingSpec& s, double k, double gap, double delay,
                                   NestedStrategy strategy = NestedStrategy::Auto, NestedTolerance tol = {}) {
  return NonlocalKernel(s, gap, delay, strategy, tol)(k);
}

// 2 pi |X(k)|^2 cos(k dt), the gapless real part.
inline double re_t_closed(const SwitchingSpec& s, double k, double delay) {
  if (!(k >= 0.0)) throw DomainError("re_t_closed: k must be nonnegative");
  return 2.0 * pi * std::norm(profiles::switching_fourier(s, k)) * std::cos(k * delay);
}

enum class DeltaRegularization { TopHatReg, GaussianReg };

// 2 int dt1 d_eps(t1) e^{-i a t1} int^{t1} dt2 d_eps'(t2) e^{i b t2}, a = k - Omega, b = k + Omega.
inline cplx regularized_delta_T0(DeltaRegularization kind, double eps, double eps_prime, double k, double gap) {
  if (!(eps > 0.0) || !(eps_prime > 0.0)) throw DomainError("regulators must be positive");
  const double scale = std::abs(k) + std::abs(gap);
  if (eps * scale > 50.0 || eps_prime * scale > 50.0) {
    throw DomainError("regularized delta kernel outside the guarded range eps (|k| + |Omega|) <= 50");
  }
  const double a = k - gap, b = k + gap;
  if (kind == DeltaRegularization::TopHatReg) {
    ExpSum x1{-0.5 * eps, 0.5 * eps, {{1.0 / eps, 0.0}}};
    ExpSum x2{-0.5 * eps_prime, 0.5 * eps_prime, {{1.0 / eps_prime, 0.0}}};
    return 2.0 * nested_pair(x1, x2, a, b);
  }
  // e^{-eps^2 a^2 - eps'^2 b^2} (1 - erf(i y)), y = (eps^2 a + eps'^2 b)/sqrt(eps^2 + eps'^2)
  const double e = eps * eps * a * a + eps_prime * eps_prime * b * b;
  const double y = (eps * eps * a + eps_prime * eps_prime * b) / std::hypot(eps, eps_prime);
  return std::exp(-e) - std::exp(y * y - e) * specfun::detail::erf_scaled(cplx(0.0, y));
}

}  // namespace harvest::kernels
