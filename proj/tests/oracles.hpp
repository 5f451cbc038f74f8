#pragma once

// Reference values computed with Boost's double-exponential quadrature. None of
// this goes through the library's own integrator or series code.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace dualslope::oracle {

inline double integrate_finite(auto f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts(15);
  return ts.integrate(f, a, b, 1e-14);
}

inline double integrate_to_infinity(auto f, double a) {
  boost::math::quadrature::exp_sinh<double> es(12);
  return es.integrate(f, a, std::numeric_limits<double>::infinity(), 1e-14);
}

/// C(b, z) from its defining integrals: p int_0^1 u^(p-1) / (1 + z u) du for
/// b > 0 (p = 1/b), and 1 + int_1^inf z / (z + t^a) dt for b = -a < -1.
inline double c_func(double b, double z) {
  if (b > 0.0) {
    const double p = 1.0 / b;
    return p * integrate_finite([&](double u) { return std::pow(u, p - 1.0) / (1.0 + z * u); },
                                0.0, 1.0);
  }
  const double a = -b;
  // t = e^s turns the algebraic tail into an exponential one.
  return 1.0 + integrate_to_infinity(
                   [&](double s) { return z / (z * std::exp(-s) + std::exp((a - 1.0) * s)); },
                   0.0);
}

/// r (1 + I(r)) where I(r) is the interference integral for a serving
/// distance R_c r^(1/d) inside the critical distance:
///   I(r) = int_1^{1/r} T / (T + t^b) dt
///        + int_{1/r}^inf T / (T + t^a r^(a-b)) dt.
inline double rho(double b, double a, double t, double r) {
  const double edge = std::log(1.0 / r);
  const double inner = integrate_finite(
      [&](double s) { return t / (t * std::exp(-s) + std::exp((b - 1.0) * s)); },
      0.0, edge);
  const double outer = integrate_to_infinity(
      [&](double s) {
        return t / (t * std::exp(-s) + std::exp((a - 1.0) * s) * std::pow(r, a - b));
      },
      edge);
  return r * (1.0 + inner + outer);
}

}  // namespace dualslope::oracle
