#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "dualslope/error.hpp"
#include "dualslope/model.hpp"
#include "dualslope/quadrature.hpp"
#include "dualslope/specfun.hpp"

namespace dualslope {

enum class CoverageKind { SINR, SIR, SNR };
enum class CoverageMethod { ClosedForm, GeneralQuadrature, MonteCarlo };

/// One point of a coverage curve; threshold_t is linear (not dB).
struct CoveragePoint {
  double threshold_t;
  double probability;
  CoverageKind kind;
  CoverageMethod method;
};

/// Target accuracy of a coverage probability: the result is accurate to
/// max(abs_tol, rel_tol * P).
inline constexpr QuadratureSpec kCoverageQuadrature{1e-10, 1e-14, 2000};

namespace detail {

inline constexpr int kMaxDecades = 300;

inline void check_threshold(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InvalidScalar("SINR threshold must be positive and finite");
  }
}

inline double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

/// Integral of f over (0, 1], one decade at a time toward zero. f must be
/// bounded by `bound` near zero; the walk stops once bound * (remaining
/// length) is negligible. Resolves features that shrink toward r = 0 at high
/// density, which a single adaptive pass over [0, 1] can step over.
template <class F>
double integrate_unit_toward_zero(F&& f, double bound, const QuadratureSpec& spec) {
  const QuadratureSpec piece{spec.rel_tol, std::max(spec.abs_tol / kMaxDecades, 1e-300),
                             spec.max_subdivisions};
  double sum = 0.0;
  double hi = 1.0;
  for (int k = 0; k < kMaxDecades; ++k) {
    const double lo = hi * 0.1;
    sum += integrate_adaptive(f, lo, hi, piece);
    hi = lo;
    if (bound * hi <= 1e-3 * std::max(spec.abs_tol, spec.rel_tol * sum)) break;
  }
  return sum + hi * f(hi);
}

/// Integral over [1, inf) of f bounded by bound * exp(-rate * r), one decade
/// at a time outward.
template <class F>
double integrate_from_one_outward(F&& f, double bound, double rate, const QuadratureSpec& spec) {
  const QuadratureSpec piece{spec.rel_tol, std::max(spec.abs_tol / kMaxDecades, 1e-300),
                             spec.max_subdivisions};
  double sum = 0.0;
  double lo = 1.0;
  for (int k = 0; k < kMaxDecades; ++k) {
    const double hi = lo * 10.0;
    sum += integrate_adaptive(f, lo, hi, piece);
    lo = hi;
    const double tail = bound * std::exp(-rate * lo) / rate;
    if (tail <= 1e-3 * std::max(spec.abs_tol, spec.rel_tol * sum)) break;
  }
  return sum;
}

/// Dimensionless parameters every closed form depends on. Models related by
/// the planar equivalence or by half-space halving share them.
struct ReducedParams {
  double b;      // alpha0 / d
  double a;      // alpha1 / d
  double k;      // lambda V_d R_c^d
  double noise;  // t sigma^2 R_c^alpha0
};

inline ReducedParams reduce(const NetworkModel& model, double t) {
  const auto& pl = model.path_loss();
  const double d = model.dim().d;
  return {pl.alpha0() / d, pl.alpha1() / d, model.reduced_density(),
          t * model.sigma2() * std::pow(pl.r_c(), pl.alpha0())};
}

/// k * int_1^inf exp(-k c r - noise r^a) dr, the contribution of serving
/// distances beyond R_c (c = 1 for the noise-only case).
inline double far_field_term(const ReducedParams& p, double c, const QuadratureSpec& spec) {
  if (p.noise == 0.0) return std::exp(-p.k * c) / c;
  // r = 1 + v / rate, with rate the log-slope of the integrand at r = 1.
  const double rate = p.k * c + p.noise * p.a;
  auto integrand = [&](double v) {
    const double r = 1.0 + v / rate;
    return std::exp(-p.k * c * r - p.noise * std::pow(r, p.a));
  };
  const QuadratureSpec tail{spec.rel_tol, std::max(spec.abs_tol * rate / p.k, 1e-300),
                            spec.max_subdivisions};
  return p.k / rate * integrate_adaptive(integrand, 0.0, std::numeric_limits<double>::infinity(),
                                         tail);
}

// k * int_0^1 exp(-k rho(r) - noise r^b) dr
inline double near_field_term(const ReducedParams& p, const RhoKernel& kernel,
                              const QuadratureSpec& spec) {
  auto integrand = [&](double r) {
    const double rb = p.noise == 0.0 ? 0.0 : p.noise * std::pow(r, p.b);
    return std::exp(-p.k * kernel(r) - rb);
  };
  const QuadratureSpec scaled{spec.rel_tol, spec.abs_tol / p.k, spec.max_subdivisions};
  return p.k * integrate_unit_toward_zero(integrand, 1.0, scaled);
}

inline RhoKernel make_kernel(const NetworkModel& model, const ReducedParams& p, double t) {
  if (model.path_loss().alpha0() == 0.0) {
    throw SingularParameter(
        "closed-form coverage needs alpha0 > 0; use coverage_general for alpha0 = 0");
  }
  return RhoKernel(p.b, p.a, t);
}

}  // namespace detail

/// SINR coverage for a general monotone path loss `gain`, by nested
/// quadrature of the Poisson-network coverage integral
///   lambda V_d int_0^inf exp(-t sigma^2 / gain(y^(1/d)))
///     exp(-lambda V_d y (1 + int_1^inf t / (t + gain(y^(1/d)) / gain((s y)^(1/d))) ds)) dy.
/// The model supplies lambda, V_d, sigma^2 and d; its critical distance is
/// only used to place quadrature breakpoints.
template <class Gain>
double coverage_general(const NetworkModel& model, Gain&& gain, double t,
                        const QuadratureSpec& spec = kCoverageQuadrature) {
  detail::check_threshold(t);
  const int d = model.dim().d;
  const double r_c = model.path_loss().r_c();
  const double k = model.reduced_density();
  const double noise = t * model.sigma2();
  const QuadratureSpec inner_spec{spec.rel_tol * 0.1, 1e-300, spec.max_subdivisions};
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Outer variable r = y / R_c^d; interferer at s y maps to u = ln s.
  auto interference = [&](double r, double x, double g0) {
    auto integrand = [&](double u) {
      const double ratio = g0 / gain(x * std::exp(u / d));
      if (!std::isfinite(ratio)) return 0.0;
      return t * std::exp(u - std::log(t + ratio));
    };
    if (r >= 1.0) return integrate_adaptive(integrand, 0.0, kInf, inner_spec);
    const double kink = -std::log(r);
    return integrate_adaptive(integrand, 0.0, kink, inner_spec) +
           integrate_adaptive(integrand, kink, kInf, inner_spec);
  };
  auto outer = [&](double r) {
    const double x = r_c * std::pow(r, 1.0 / d);
    const double g0 = gain(x);
    const double noise_factor = noise == 0.0 ? 1.0 : std::exp(-noise / g0);
    if (noise_factor == 0.0) return 0.0;
    return noise_factor * std::exp(-k * r * (1.0 + interference(r, x, g0)));
  };

  const QuadratureSpec scaled{spec.rel_tol, spec.abs_tol / k, spec.max_subdivisions};
  const double near = detail::integrate_unit_toward_zero(outer, 1.0, scaled);
  const double far = detail::integrate_from_one_outward(outer, 1.0, k, scaled);
  return detail::clamp_probability(k * (near + far));
}

/// Closed-form dual-slope SINR coverage:
///   K int_0^1 exp(-K rho(r) - t sigma^2 R_c^a0 r^(a0/d)) dr
///   + K int_1^inf exp(-K C(-a1/d, t) r - t sigma^2 R_c^a0 r^(a1/d)) dr,
/// with K = lambda V_d R_c^d. Throws SingularParameter for alpha0 = 0.
inline double coverage_sinr(const NetworkModel& model, double t,
                            const QuadratureSpec& spec = kCoverageQuadrature) {
  detail::check_threshold(t);
  const auto p = detail::reduce(model, t);
  const auto kernel = detail::make_kernel(model, p, t);
  const double near = detail::near_field_term(p, kernel, spec);
  const double far = detail::far_field_term(p, kernel.far_coefficient(), spec);
  return detail::clamp_probability(near + far);
}

/// Interference-limited coverage (noise dropped). The far-field term is
/// exp(-K C) / C in closed form.
inline double coverage_sir(const NetworkModel& model, double t,
                           const QuadratureSpec& spec = kCoverageQuadrature) {
  detail::check_threshold(t);
  auto p = detail::reduce(model, t);
  p.noise = 0.0;
  const auto kernel = detail::make_kernel(model, p, t);
  const double c = kernel.far_coefficient();
  const double near = detail::near_field_term(p, kernel, spec);
  return detail::clamp_probability(near + std::exp(-p.k * c) / c);
}

/// Noise-limited coverage: int_0^inf exp(-t sigma^2 / l(x)) f(x) dx with f the
/// nearest-BS distance density. Substituting x = R_c r^(1/d) gives
///   K int_0^inf exp(-K r - t sigma^2 R_c^a0 r^e(r)) dr,
/// e(r) = alpha0/d below r = 1 and alpha1/d above.
inline double coverage_snr(const NetworkModel& model, double t,
                           const QuadratureSpec& spec = kCoverageQuadrature) {
  detail::check_threshold(t);
  const auto p = detail::reduce(model, t);
  if (p.noise == 0.0) return 1.0;
  auto integrand = [&](double r) { return std::exp(-p.k * r - p.noise * std::pow(r, p.b)); };
  const QuadratureSpec scaled{spec.rel_tol, spec.abs_tol / p.k, spec.max_subdivisions};
  const double near = p.k * detail::integrate_unit_toward_zero(integrand, 1.0, scaled);
  return detail::clamp_probability(near + detail::far_field_term(p, 1.0, spec));
}

/// SINR coverage by the closed form when alpha0 > 0, otherwise by the general
/// integral with the model's own path loss.
inline double coverage_sinr_any(const NetworkModel& model, double t,
                                const QuadratureSpec& spec = kCoverageQuadrature) {
  if (model.path_loss().alpha0() > 0.0) return coverage_sinr(model, t, spec);
  return coverage_general(model, model.path_loss(), t, spec);
}

inline double coverage_sir_any(const NetworkModel& model, double t,
                               const QuadratureSpec& spec = kCoverageQuadrature) {
  if (model.path_loss().alpha0() > 0.0) return coverage_sir(model, t, spec);
  const auto quiet = model.with_sigma2(0.0);
  return coverage_general(quiet, quiet.path_loss(), t, spec);
}

/// Density of the distance to the nearest BS: V_d d lambda x^(d-1) e^(-lambda V_d x^d).
inline double nearest_distance_pdf(const NetworkModel& model, double x) {
  if (!(x > 0.0)) throw InvalidScalar("distance must be positive");
  const int d = model.dim().d;
  const double lv = model.density_volume();
  return lv * d * power_of_dim(x, d - 1) * std::exp(-lv * power_of_dim(x, d));
}

/// Laplace transform E[exp(-s I)] of the interference from BSs farther than
/// serving_dist:
///   exp(-lambda int_x^inf s l(z) / (1 + s l(z)) V_d d z^(d-1) dz).
inline double interference_laplace(const NetworkModel& model, double s, double serving_dist,
                                   const QuadratureSpec& spec = kCoverageQuadrature) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidScalar("Laplace argument must be >= 0");
  if (!(serving_dist > 0.0)) throw InvalidScalar("serving distance must be positive");
  if (s == 0.0) return 1.0;
  const auto& pl = model.path_loss();
  const int d = model.dim().d;
  const double log_s = std::log(s);
  const double kink = std::log(pl.r_c());
  const double log_eta = std::log(pl.eta());
  // z = e^u; dz z^(d-1) = z^d du. Logs keep z^d s l(z) finite far out.
  auto integrand = [&](double u) {
    const double log_sl =
        log_s + (u <= kink ? -pl.alpha0() * u : log_eta - pl.alpha1() * u);
    return std::exp(d * u + log_sl) / (1.0 + std::exp(log_sl));
  };
  const QuadratureSpec local{spec.rel_tol, 1e-300, spec.max_subdivisions};
  const double lo = std::log(serving_dist);
  double total = 0.0;
  if (lo < kink) {
    total += integrate_adaptive(integrand, lo, kink, local);
    total += integrate_adaptive(integrand, kink, std::numeric_limits<double>::infinity(), local);
  } else {
    total += integrate_adaptive(integrand, lo, std::numeric_limits<double>::infinity(), local);
  }
  return std::exp(-model.density_volume() * d * total);
}

}  // namespace dualslope
