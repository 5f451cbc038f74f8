#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "dualslope/error.hpp"

namespace dualslope {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule on [-1, 1]. Nodes are
// listed from the outermost inward; odd indices are the Gauss nodes.
inline constexpr std::array<double, 11> kKronrodNodes = {
    9.95657163025808080735527280689002848e-01, 9.73906528517171720077964012084452053e-01,
    9.30157491355708226001207180059508346e-01, 8.65063366688984510732096688423493049e-01,
    7.80817726586416897063717578345042377e-01, 6.79409568299024406234327365114873576e-01,
    5.62757134668604683339000099272694141e-01, 4.33395394129247190799265943165784162e-01,
    2.94392862701460198131126603103865566e-01, 1.48874338981631210884826001129719985e-01,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    1.16946388673718742780643960621920484e-02, 3.25581623079647274788189724593897606e-02,
    5.47558965743519960313813002445801764e-02, 7.50396748109199527670431409161900094e-02,
    9.31254545836976055350654650833663444e-02, 1.09387158802297641899210590325804960e-01,
    1.23491976262065851077958109831074160e-01, 1.34709217311473325928054001771706833e-01,
    1.42775938577060080797094273138717061e-01, 1.47739104901338491374841515972068046e-01,
    1.49445554002916905664936468389821204e-01};
inline constexpr std::array<double, 5> kGaussWeights = {
    6.66713443086881375935688098933317929e-02, 1.49451349150580593145776339657697332e-01,
    2.19086362515982043995534934228163192e-01, 2.69266719309996355091226921569469353e-01,
    2.95524224714752870173892994651338329e-01};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

template <class F>
double checked_eval(F& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw NoConvergence("integrand is not finite at x=" + std::to_string(x));
  }
  return v;
}

// One Gauss-Kronrod panel with the QUADPACK error heuristic.
template <class F>
Segment kronrod_panel(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 10> lo{};
  std::array<double, 10> hi{};

  const double fc = checked_eval(f, center);
  double res_k = kKronrodWeights[10] * fc;
  double res_g = 0.0;
  double res_abs = std::abs(res_k);
  for (std::size_t i = 0; i < 10; ++i) {
    const double dx = half * kKronrodNodes[i];
    lo[i] = checked_eval(f, center - dx);
    hi[i] = checked_eval(f, center + dx);
    const double pair = lo[i] + hi[i];
    res_k += kKronrodWeights[i] * pair;
    res_abs += kKronrodWeights[i] * (std::abs(lo[i]) + std::abs(hi[i]));
    if (i % 2 == 1) res_g += kGaussWeights[i / 2] * pair;
  }

  const double mean = 0.5 * res_k;
  double res_asc = kKronrodWeights[10] * std::abs(fc - mean);
  for (std::size_t i = 0; i < 10; ++i) {
    res_asc += kKronrodWeights[i] * (std::abs(lo[i] - mean) + std::abs(hi[i] - mean));
  }

  const double h = std::abs(half);
  res_abs *= h;
  res_asc *= h;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * res_abs, err);
  }
  return {a, b, res_k * half, err};
}

template <class F>
double adaptive_finite(F& f, double a, double b, const QuadratureSpec& spec) {
  std::vector<Segment> segments;
  segments.reserve(64);
  segments.push_back(kronrod_panel(f, a, b));

  for (int subdivisions = 0;; ++subdivisions) {
    double value = 0.0;
    double error = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      value += segments[i].value;
      error += segments[i].error;
      if (segments[i].error > segments[worst].error) worst = i;
    }
    if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
      return value;
    }
    if (subdivisions >= spec.max_subdivisions) {
      throw NoConvergence("adaptive quadrature exhausted " +
                          std::to_string(spec.max_subdivisions) +
                          " subdivisions (error estimate " + std::to_string(error) + ")");
    }
    const Segment s = segments[worst];
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      throw NoConvergence("adaptive quadrature hit round-off limits near x=" +
                          std::to_string(mid));
    }
    segments[worst] = kronrod_panel(f, s.a, mid);
    segments.push_back(kronrod_panel(f, mid, s.b));
  }
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (21-point) integration of f over [a, b]; b may be
/// +infinity, in which case x = a + (1 - s) / s maps the range onto (0, 1]; the
/// image of infinity sits at s = 0 where doubles are densest, so algebraic
/// tails can be bisected far enough.
/// Bisects the panel with the largest error estimate until the total error is
/// below max(abs_tol, rel_tol * |result|).
template <class F>
double integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) || spec.max_subdivisions < 1) {
    throw InvalidScalar("quadrature tolerances must be positive");
  }
  if (!std::isfinite(a) || std::isnan(b) || b == -std::numeric_limits<double>::infinity()) {
    throw InvalidScalar("integration range must start at a finite point");
  }
  if (b == a) return 0.0;
  if (std::isinf(b)) {
    auto mapped = [&](double s) {
      const double v = f(a + (1.0 - s) / s);
      return v == 0.0 ? 0.0 : v / s / s;
    };
    return detail::adaptive_finite(mapped, 0.0, 1.0, spec);
  }
  if (b < a) {
    return -detail::adaptive_finite(f, b, a, spec);
  }
  return detail::adaptive_finite(f, a, b, spec);
}

}  // namespace dualslope
