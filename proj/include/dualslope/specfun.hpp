#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dualslope/error.hpp"
#include "dualslope/quadrature.hpp"

namespace dualslope {

// C(b, z) = 2F1(1, 1/b; 1 + 1/b; -z), the kernel of the dual-slope coverage
// expressions. With p = 1/b the Maclaurin series is sum_n p / (p + n) (-z)^n.
//
// Evaluation regions:
//   z <= 1/2        direct series
//   1/2 < z <= z1   Pfaff transform: C = (1 + z)^-1 sum_n n! / (p + 1)_n w^n,
//                   w = z / (1 + z)
//   z > z1, b < 0   continuation in 1/z:
//                   C = p pi / sin(p pi) z^-p - sum_n (-1)^n z^-(n+1) p / (n + 1 - p)
//   z > z1, b > 0   C = z^-p [C(b, 1) + int_0^{p ln z} e^u / (1 + e^{b u}) du],
//                   from C(b, z) = int_0^1 ds / (1 + z s^b); integer p is allowed
//                   here, unlike the 1/z continuation.
namespace detail {

inline constexpr int kMaxSeriesTerms = 20000;
inline constexpr double kSeriesEps = 1e-17;

inline double c_direct_series(double p, double z) {
  double sum = 1.0;
  double power = 1.0;
  for (int n = 1; n < kMaxSeriesTerms; ++n) {
    power *= -z;
    const double term = p / (p + n) * power;
    sum += term;
    if (std::abs(term) <= kSeriesEps * std::abs(sum)) return sum;
  }
  throw NoConvergence("C(b, z) direct series did not converge for z=" + std::to_string(z));
}

// Sum over n >= 1 of the direct series: C(b, z) - 1 without cancellation.
inline double c_direct_series_tail(double p, double z) {
  double sum = 0.0;
  double power = 1.0;
  for (int n = 1; n < kMaxSeriesTerms; ++n) {
    power *= -z;
    const double term = p / (p + n) * power;
    sum += term;
    if (std::abs(term) <= kSeriesEps * std::abs(sum)) return sum;
  }
  throw NoConvergence("C(b, z) - 1 series did not converge for z=" + std::to_string(z));
}

inline double c_pfaff(double p, double z) {
  const double w = z / (1.0 + z);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    term *= (n + 1.0) / (p + 1.0 + n) * w;
    sum += term;
    if (n > 2 && std::abs(term) <= kSeriesEps * std::abs(sum)) return sum / (1.0 + z);
  }
  throw NoConvergence("C(b, z) Pfaff series did not converge for z=" + std::to_string(z));
}

inline double c_inverse_series(double p, double z) {
  const double lead = p * std::numbers::pi / std::sin(p * std::numbers::pi) * std::pow(z, -p);
  double power = 1.0;
  double sum = 0.0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    power /= (n == 0 ? z : -z);
    const double term = power * p / (n + 1.0 - p);
    sum += term;
    if (std::abs(term) <= kSeriesEps * std::abs(lead - sum)) return lead - sum;
  }
  throw NoConvergence("C(b, z) 1/z series did not converge for z=" + std::to_string(z));
}

inline constexpr double kPfaffLimitPositive = 4.0;
inline constexpr double kPfaffLimitNegative = 2.0;

// b > 0 and ln z > ln 4. Works from ln z so that arguments beyond the double
// range (z = 1 / (t r^b) with r -> 0) stay representable.
// at_one is C(b, 1).
inline double c_positive_large(double b, double log_z, double at_one) {
  const double upper = log_z / b;
  // z^-p int_0^U e^u / (1 + e^{bu}) du, written with e^{u-U} <= 1.
  auto integrand = [b, upper](double u) { return std::exp(u - upper) / (1.0 + std::exp(b * u)); };
  const QuadratureSpec spec{1e-13, std::numeric_limits<double>::min(), 400};
  return std::exp(-upper) * at_one + integrate_adaptive(integrand, 0.0, upper, spec);
}

inline double c_positive_large(double b, double log_z) {
  return c_positive_large(b, log_z, c_pfaff(1.0 / b, 1.0));
}

inline void check_c_parameters(double b, double z) {
  if (b == 0.0 || !std::isfinite(b)) {
    throw SingularParameter("C(b, z) requires a finite non-zero b");
  }
  if (b < 0.0) {
    const double p = 1.0 / b;
    if (p == std::round(p)) {
      throw SingularParameter("C(b, z) is undefined when 1/b is a non-positive integer (b=" +
                              std::to_string(b) + ")");
    }
  }
  if (!(z >= 0.0)) {
    throw InvalidScalar("C(b, z) requires z >= 0");
  }
}

}  // namespace detail

/// Gauss hypergeometric kernel C(b, z) = 2F1(1, 1/b; 1 + 1/b; -z) for z >= 0.
inline double c_func(double b, double z) {
  detail::check_c_parameters(b, z);
  const double p = 1.0 / b;
  if (z == 0.0) return 1.0;
  if (std::isinf(z)) {
    return b > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (z <= 0.5) return detail::c_direct_series(p, z);
  if (b > 0.0) {
    if (z <= detail::kPfaffLimitPositive) return detail::c_pfaff(p, z);
    return detail::c_positive_large(b, std::log(z));
  }
  if (z <= detail::kPfaffLimitNegative) return detail::c_pfaff(p, z);
  return detail::c_inverse_series(p, z);
}

namespace detail {

// C(b, exp(log_z)) for b > 0, accepting log_z beyond the double range of z.
inline double c_positive_from_log(double b, double log_z, double at_one) {
  if (log_z > std::log(kPfaffLimitPositive)) return c_positive_large(b, log_z, at_one);
  return c_func(b, std::exp(log_z));
}

inline double c_positive_from_log(double b, double log_z) {
  return c_positive_from_log(b, log_z, c_pfaff(1.0 / b, 1.0));
}

// C(-a, z) - 1 for a > 1.
inline double c_negative_minus_one(double a, double z) {
  const double p = -1.0 / a;
  if (z <= 0.5) return c_direct_series_tail(p, z);
  return c_func(-a, z) - 1.0;
}

}  // namespace detail

/// Inner exponent of the dual-slope coverage integral over serving distances
/// inside the critical distance. Holds C(b, 1/t) and C(-a, t), which depend
/// only on the threshold.
class RhoKernel {
 public:
  /// b = alpha0 / d, a = alpha1 / d, t the linear SINR threshold.
  RhoKernel(double b, double a1_over_d, double t) : b_(b), a_(a1_over_d), t_(t) {
    if (b == 0.0) {
      throw SingularParameter("rho requires alpha0 > 0 (b = alpha0/d = 0 is singular)");
    }
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw InvalidScalar("rho requires b = alpha0/d > 0");
    }
    if (!(a1_over_d > 1.0) || !std::isfinite(a1_over_d)) {
      throw DivergentInterference("rho requires alpha1/d > 1");
    }
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw InvalidScalar("rho requires a positive finite threshold");
    }
    log_t_ = std::log(t);
    c_one_ = detail::c_pfaff(1.0 / b, 1.0);
    c_inner_ = detail::c_positive_from_log(b, -log_t_, c_one_);
    c_far_ = c_func(-a1_over_d, t);
  }

  double b() const noexcept { return b_; }
  double a() const noexcept { return a_; }
  double t() const noexcept { return t_; }

  /// C(-alpha1/d, t): the exponent slope for serving distances beyond R_c.
  double far_coefficient() const noexcept { return c_far_; }

  /// rho(r) = C(b, 1/(t r^b)) + C(-a, t r^b) - r C(b, 1/t) + r - 1, r in (0, 1].
  double operator()(double r) const {
    if (!(r > 0.0) || r > 1.0) {
      throw InvalidScalar("rho requires r in (0, 1]");
    }
    const double log_rb = b_ * std::log(r);
    const double first = detail::c_positive_from_log(b_, -(log_t_ + log_rb), c_one_);
    const double second = detail::c_negative_minus_one(a_, t_ * std::exp(log_rb));
    return first + second - r * c_inner_ + r;
  }

 private:
  double b_;
  double a_;
  double t_;
  double log_t_ = 0.0;
  double c_one_ = 0.0;
  double c_inner_ = 0.0;
  double c_far_ = 0.0;
};

inline double rho(double b, double a1_over_d, double t, double r) {
  return RhoKernel(b, a1_over_d, t)(r);
}

}  // namespace dualslope
