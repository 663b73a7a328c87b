#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "harvest/errors.hpp"
#include "harvest/specfun.hpp"

namespace harvest {

enum class SwitchingFamily { TopHat, CosineBump, GaussianRegDelta, TopHatRegDelta, DeltaIdeal };
enum class SmearingFamily { PointLike, GaussianBall, TopHatBall, Hydrogen2s2p };
enum class FieldModel { Scalar, EM2s2p };
enum class CausalClass { Spacelike, Lightlike, Timelike, Mixed, Unclassified };

inline std::string to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Lightlike: return "lightlike";
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Mixed: return "mixed";
    case CausalClass::Unclassified: return "unclassified";
  }
  return "unclassified";
}

// Switching function chi(t). Compact families live on [start, start + duration];
// the two regularized deltas are centred on start, DeltaIdeal is strength * delta(t - start).
struct SwitchingSpec {
  SwitchingFamily family = SwitchingFamily::TopHat;
  double duration = 1.0;
  double start = 0.0;
  double strength = 1.0;   // eta, delta families only
  double regulator = 0.0;  // epsilon, regularized deltas only

  bool is_delta_family() const {
    return family == SwitchingFamily::GaussianRegDelta || family == SwitchingFamily::TopHatRegDelta ||
           family == SwitchingFamily::DeltaIdeal;
  }
  bool compact() const { return family != SwitchingFamily::GaussianRegDelta; }

  // Support length: T, epsilon, or 0.
  double support_length() const {
    switch (family) {
      case SwitchingFamily::TopHat:
      case SwitchingFamily::CosineBump: return duration;
      case SwitchingFamily::TopHatRegDelta: return regulator;
      case SwitchingFamily::DeltaIdeal: return 0.0;
      case SwitchingFamily::GaussianRegDelta: break;
    }
    throw DomainError("Gaussian-regularized delta switching has no compact support");
  }
  double support_begin() const {
    return family == SwitchingFamily::TopHatRegDelta ? start - 0.5 * regulator : start;
  }
  double support_end() const { return support_begin() + support_length(); }

  SwitchingSpec shifted(double dt) const {
    SwitchingSpec s = *this;
    s.start += dt;
    return s;
  }

  void validate() const {
    if (!std::isfinite(start)) throw ConfigError("switching start must be finite");
    if (!is_delta_family() && !(duration > 0.0 && std::isfinite(duration))) {
      throw ConfigError("switching duration must be positive");
    }
    if (is_delta_family() && !(strength > 0.0 && std::isfinite(strength))) {
      throw ConfigError("delta switching strength must be positive");
    }
    if ((family == SwitchingFamily::GaussianRegDelta || family == SwitchingFamily::TopHatRegDelta) &&
        !(regulator > 0.0 && std::isfinite(regulator))) {
      throw ConfigError("delta regulator must be positive");
    }
  }
};

struct SmearingSpec {
  SmearingFamily family = SmearingFamily::PointLike;
  double scale = 1.0;  // sigma, R (support |x| <= R/2), or a0
  int dimension = 3;

  bool compact() const { return family == SmearingFamily::PointLike || family == SmearingFamily::TopHatBall; }
  // Diameter of the support; 0 for a point.
  double support_diameter() const {
    if (family == SmearingFamily::PointLike) return 0.0;
    if (family == SmearingFamily::TopHatBall) return scale;
    throw DomainError("smearing has no compact support");
  }
  void validate() const {
    SphereDim{dimension};
    if (family != SmearingFamily::PointLike && !(scale > 0.0 && std::isfinite(scale))) {
      throw ConfigError("smearing scale must be positive");
    }
    if (family == SmearingFamily::Hydrogen2s2p && dimension != 3) {
      throw ConfigError("hydrogenic smearing requires n = 3");
    }
  }
};

struct PairConfig {
  SphereDim dim{3};
  double gap = 0.0;
  double coupling = 1.0;
  double separation = 0.0;
  SwitchingSpec switching;  // detector A; B is the same profile delayed by `delay`
  double delay = 0.0;       // t_B - t_A
  SmearingSpec smearing;
  FieldModel field = FieldModel::Scalar;
  double angle = 0.0;                                       // EM only
  double em_coupling = 4.0 * specfun::pi / 137.035999084;  // e^2, EM only

  SwitchingSpec switching_a() const { return switching; }
  SwitchingSpec switching_b() const { return switching.shifted(delay); }

  void validate() const {
    switching.validate();
    smearing.validate();
    if (smearing.dimension != dim.n()) throw ConfigError("smearing dimension differs from the pair dimension");
    if (!std::isfinite(gap)) throw ConfigError("gap must be finite");
    if (!(coupling > 0.0 && std::isfinite(coupling))) throw ConfigError("coupling must be positive");
    if (!(separation >= 0.0 && std::isfinite(separation))) throw ConfigError("separation must be nonnegative");
    if (!std::isfinite(delay)) throw ConfigError("delay must be finite");
    if (field == FieldModel::EM2s2p) {
      if (dim.n() != 3) throw ConfigError("the 2s-2p model requires n = 3");
      if (gap != 0.0) throw ConfigError("the 2s-2p transition is degenerate; gap must be 0");
      if (smearing.family != SmearingFamily::Hydrogen2s2p) throw ConfigError("the 2s-2p model requires hydrogenic smearing");
      if (!(angle >= 0.0 && angle <= specfun::pi)) throw ConfigError("angle must lie in [0, pi]");
      if (!(em_coupling > 0.0 && std::isfinite(em_coupling))) throw ConfigError("e^2 must be positive");
      if (switching.is_delta_family()) throw ConfigError("the 2s-2p model takes a compact switching");
    } else if (smearing.family == SmearingFamily::Hydrogen2s2p) {
      throw ConfigError("hydrogenic smearing is only valid with the 2s-2p model");
    }
  }
};

// Exponential-sum form chi(t) = sum_j c_j exp(i w_j (t - lo)) on [lo, hi], zero outside.
struct ExpSum {
  struct Term {
    cplx c;
    double w;
  };
  double lo = 0, hi = 0;
  std::vector<Term> terms;
};

namespace profiles {

using specfun::pi;

inline bool has_exp_sum(const SwitchingSpec& s) {
  return s.family == SwitchingFamily::TopHat || s.family == SwitchingFamily::CosineBump ||
         s.family == SwitchingFamily::TopHatRegDelta;
}

inline ExpSum exp_sum(const SwitchingSpec& s) {
  ExpSum e;
  e.lo = s.support_begin();
  e.hi = s.support_end();
  switch (s.family) {
    case SwitchingFamily::TopHat: e.terms = {{1.0, 0.0}}; break;
    case SwitchingFamily::CosineBump: {
      // sin^2(pi u / T) = 1/2 - e^{2 pi i u/T}/4 - e^{-2 pi i u/T}/4
      const double w = 2.0 * pi / s.duration;
      e.terms = {{0.5, 0.0}, {-0.25, w}, {-0.25, -w}};
      break;
    }
    case SwitchingFamily::TopHatRegDelta: e.terms = {{s.strength / s.regulator, 0.0}}; break;
    default: throw UnsupportedFamily("switching family has no exponential-sum form");
  }
  return e;
}

inline double switching_value(const SwitchingSpec& s, double t) {
  switch (s.family) {
    case SwitchingFamily::TopHat: return (t >= s.start && t <= s.start + s.duration) ? 1.0 : 0.0;
    case SwitchingFamily::CosineBump: {
      if (t < s.start || t > s.start + s.duration) return 0.0;
      const double v = std::sin(pi * (t - s.start) / s.duration);
      return v * v;
    }
    case SwitchingFamily::TopHatRegDelta:
      return std::abs(t - s.start) <= 0.5 * s.regulator ? s.strength / s.regulator : 0.0;
    case SwitchingFamily::GaussianRegDelta: {
      const double u = (t - s.start) / (2.0 * s.regulator);
      return s.strength * std::exp(-u * u) / (2.0 * s.regulator * std::sqrt(pi));
    }
    case SwitchingFamily::DeltaIdeal: break;
  }
  throw UnsupportedFamily("ideal delta switching has no pointwise value");
}

// X(w) = (2 pi)^{-1/2} int chi(t) e^{i w t} dt.
//   TopHat:         e^{i w t0} T phi1(i w T) / sqrt(2 pi)
//   CosineBump:     e^{i w t0} T phi1(i w T) W^2 / (2 (W^2 - w^2)) / sqrt(2 pi),  W = 2 pi / T
//   TopHatRegDelta: eta e^{i w t_nu} sin(w eps/2)/(w eps/2) / sqrt(2 pi)
//   GaussianRegDelta: eta e^{i w t_nu} e^{-eps^2 w^2} / sqrt(2 pi)
inline cplx switching_fourier(const SwitchingSpec& s, double w) {
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  const cplx phase = std::exp(cplx(0.0, w * s.start));
  switch (s.family) {
    case SwitchingFamily::TopHat: return norm * phase * s.duration * specfun::phi1(cplx(0.0, w * s.duration));
    case SwitchingFamily::CosineBump: {
      const double T = s.duration, W = 2.0 * pi / T;
      const double den = W * W - w * w;
      cplx body;
      if (std::abs(den) > 0.1 * W * W) {
        body = T * specfun::phi1(cplx(0.0, w * T)) * (W * W / (2.0 * den));
      } else {
        body = T * (0.5 * specfun::phi1(cplx(0.0, w * T)) - 0.25 * specfun::phi1(cplx(0.0, (w + W) * T)) -
                    0.25 * specfun::phi1(cplx(0.0, (w - W) * T)));
      }
      return norm * phase * body;
    }
    case SwitchingFamily::TopHatRegDelta: {
      const double h = 0.5 * w * s.regulator;
      const double sinc = std::abs(h) < 1e-4 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
      return norm * phase * s.strength * sinc;
    }
    case SwitchingFamily::GaussianRegDelta:
      return norm * phase * s.strength * std::exp(-s.regulator * s.regulator * w * w);
    case SwitchingFamily::DeltaIdeal: break;
  }
  throw UnsupportedFamily("ideal delta switching bypasses the Fourier transform");
}

// |S(k)|^2 with S(k) = (2 pi)^{-n/2} int S(x) e^{i k.x} d^n x and int S = 1.
inline double smearing_fourier_sq(const SmearingSpec& s, double k) {
  if (!(k >= 0.0)) throw DomainError("smearing_fourier_sq: k must be nonnegative");
  const int n = s.dimension;
  const double flat = std::pow(2.0 * pi, -n);
  switch (s.family) {
    case SmearingFamily::PointLike: return flat;
    case SmearingFamily::GaussianBall: return flat * std::exp(-s.scale * s.scale * k * k);
    case SmearingFamily::TopHatBall: {
      const double f = specfun::hyp0f1_neg_sq(n + 2, 0.5 * k * s.scale);
      return flat * f * f;
    }
    case SmearingFamily::Hydrogen2s2p: {
      const double a = s.scale, u = a * a * k * k;
      const double p = u + 1.0, p2 = p * p, p4 = p2 * p2;
      return 3.0 * a * a / (2.0 * pi * pi) * (u - 1.0) * (u - 1.0) / (p4 * p4);
    }
  }
  return 0.0;
}

inline CausalClass causal_class(const PairConfig& p) {
  if (!p.smearing.compact()) {
    throw DomainError("causal classification undefined for non-compact smearing; use effective_spacelike_margin");
  }
  const double R = p.smearing.support_diameter();
  const double T = p.switching.support_length();
  const double d = p.separation, dt = std::abs(p.delay);
  const double space_gap = d - R, time_gap = dt - T;
  if (space_gap > dt + T) return CausalClass::Spacelike;
  if (d + R < std::max(0.0, time_gap)) return CausalClass::Timelike;
  if (space_gap == dt + T) return CausalClass::Lightlike;
  return CausalClass::Mixed;
}

namespace detail {

// Q(a, x) for half-integer a = two_a/2 >= 1/2.
inline double upper_gamma_q_half(int two_a, double x) {
  double q, a;
  if (two_a % 2 == 0) {
    q = std::exp(-x);
    a = 1.0;
  } else {
    q = std::erfc(std::sqrt(x));
    a = 0.5;
  }
  while (2.0 * a < two_a) {
    q += std::exp(a * std::log(x) - x - std::lgamma(a + 1.0));
    a += 1.0;
  }
  return q;
}

// int_r^inf s^m e^{-s} ds = m! e^{-r} sum_{j<=m} r^j / j!
inline double upper_gamma_int(int m, double r) {
  double term = 1.0, sum = 1.0, fact = 1.0;
  for (int j = 1; j <= m; ++j) {
    term *= r / j;
    sum += term;
    fact *= j;
  }
  return fact * std::exp(-r) * sum;
}

// Unnormalized L1 mass of |S| beyond radius r (units of a0) for the 2s-2p product, ~ r^4 |2 - r| e^{-r}.
inline double hydrogen_tail(double r) {
  const double beyond2 = upper_gamma_int(5, 2.0) - 2.0 * upper_gamma_int(4, 2.0);
  if (r >= 2.0) return upper_gamma_int(5, r) - 2.0 * upper_gamma_int(4, r);
  return beyond2 + 2.0 * (upper_gamma_int(4, r) - upper_gamma_int(4, 2.0)) - (upper_gamma_int(5, r) - upper_gamma_int(5, 2.0));
}

template <class F>
double bisect_decreasing(F&& tail_fraction, double target, double hi) {
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail_fraction(mid) > target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// Radius holding all but a fraction tau of the smearing's L1 mass.
inline double smearing_mass_radius(const SmearingSpec& s, double tau) {
  if (!(tau > 0.0 && tau < 0.5)) throw DomainError("mass tail tolerance must lie in (0, 0.5)");
  if (s.family == SmearingFamily::GaussianBall) {
    const int n = s.dimension;
    auto frac = [n](double r) { return detail::upper_gamma_q_half(n, 0.5 * r * r); };
    return s.scale * detail::bisect_decreasing(frac, tau, 100.0);
  }
  if (s.family == SmearingFamily::Hydrogen2s2p) {
    const double total = detail::hydrogen_tail(0.0);
    auto frac = [total](double r) { return detail::hydrogen_tail(r) / total; };
    return s.scale * detail::bisect_decreasing(frac, tau, 700.0);
  }
  throw DomainError("effective margin requires Gaussian or hydrogenic smearing");
}

inline double effective_spacelike_margin(const PairConfig& p, double tau) {
  const double r = smearing_mass_radius(p.smearing, tau);
  return p.separation - 2.0 * r - std::abs(p.delay) - p.switching.support_length();
}

// log10 of the wavefunction overlap of two hydrogenic envelopes a distance d apart,
// modelled as the product density a0^3 |psi_A||psi_B| at the midpoint with psi ~ e^{-r/a0}/sqrt(pi a0^3).
inline double log10_wavefunction_overlap(double d, double a0) {
  if (!(d >= 0.0) || !(a0 > 0.0)) throw DomainError("overlap estimate needs d >= 0 and a0 > 0");
  return (-d / a0) / std::log(10.0) - std::log10(pi);
}

}  // namespace profiles
}  // namespace harvest
