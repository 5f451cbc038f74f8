#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "dualslope/coverage.hpp"
#include "dualslope/error.hpp"
#include "dualslope/model.hpp"

namespace dualslope {

enum class SweepMetric { CoverageSINR, CoverageSIR, Throughput };

inline std::string_view to_string(SweepMetric m) {
  switch (m) {
    case SweepMetric::CoverageSINR: return "coverage_sinr";
    case SweepMetric::CoverageSIR: return "coverage_sir";
    case SweepMetric::Throughput: return "throughput";
  }
  return "?";
}

struct DensitySweep {
  std::vector<double> lambdas;
  std::vector<double> values;
  SweepMetric metric;
  NetworkModel base_model;
  double threshold_t;
};

enum class Regime { Linear, Sublinear, Decay, BoundaryUpper, BoundaryLower };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Linear: return "linear";
    case Regime::Sublinear: return "sublinear";
    case Regime::Decay: return "decay";
    case Regime::BoundaryUpper: return "boundary-upper";
    case Regime::BoundaryLower: return "boundary-lower";
  }
  return "?";
}

/// Predicted large-density behaviour of throughput. exponent is the log-log
/// slope for Linear and Sublinear and empty otherwise.
struct RegimeLabel {
  Regime tag;
  std::optional<double> exponent;
};

/// Half-open index range [begin, end) into a sweep.
struct IndexWindow {
  std::size_t begin;
  std::size_t end;
};

/// log2(1 + t) * lambda * P_c, with P_c supplied by `coverage(model, t)`.
template <class CoverageFn>
double potential_throughput(const NetworkModel& model, double t, CoverageFn&& coverage) {
  detail::check_threshold(t);
  return std::log1p(t) / std::numbers::ln2 * model.lambda() * coverage(model, t);
}

inline double potential_throughput(const NetworkModel& model, double t) {
  return potential_throughput(model, t, [](const NetworkModel& m, double tt) {
    return coverage_sinr_any(m, tt);
  });
}

/// Throughput of a 3D model computed through its planar equivalent:
/// (R_c^2 / R_c^d) (V_2 / V_d) tau_2D.
inline double throughput_via_2d(const NetworkModel& model, double t) {
  const double r_c = model.path_loss().r_c();
  const int d = model.dim().d;
  const double scale = (r_c * r_c / power_of_dim(r_c, d)) *
                       (ball_volume_coeff(DimTag::TwoD) / model.dim().v_d);
  return scale * potential_throughput(to_model(equivalent_2d(model)), t);
}

/// lo, lo 10^(1/n), ..., hi with n points per decade; hi is included when it
/// falls on the grid to within rounding.
inline std::vector<double> log_spaced(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi) || per_decade < 1) {
    throw InvalidScalar("log_spaced needs 0 < lo <= hi and at least one point per decade");
  }
  const double steps = std::log10(hi / lo) * per_decade;
  const auto n = static_cast<long>(std::floor(steps + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    out.push_back(lo * std::pow(10.0, static_cast<double>(k) / per_decade));
  }
  return out;
}

inline double evaluate_metric(const NetworkModel& model, double t, SweepMetric metric) {
  switch (metric) {
    case SweepMetric::CoverageSINR: return coverage_sinr_any(model, t);
    case SweepMetric::CoverageSIR: return coverage_sir(model, t);
    case SweepMetric::Throughput: return potential_throughput(model, t);
  }
  throw InvalidScalar("unknown sweep metric");
}

inline DensitySweep sweep(const NetworkModel& base, double t, std::vector<double> lambdas,
                          SweepMetric metric) {
  if (lambdas.empty()) throw InvalidScalar("density sweep needs at least one lambda");
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > lambdas[i - 1])) {
      throw InvalidScalar("density sweep lambdas must be strictly increasing");
    }
  }
  std::vector<double> values;
  values.reserve(lambdas.size());
  for (double lambda : lambdas) values.push_back(evaluate_metric(base.with_lambda(lambda), t, metric));
  return {std::move(lambdas), std::move(values), metric, base, t};
}

/// Least-squares slope of log10(value) against log10(x) over the window.
inline double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& values,
                               IndexWindow window) {
  if (window.end > xs.size() || window.end > values.size() || window.begin >= window.end ||
      window.end - window.begin < 3) {
    throw DegenerateFit("slope fit needs a window of at least 3 points");
  }
  const double n = static_cast<double>(window.end - window.begin);
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = window.begin; i < window.end; ++i) {
    if (!(values[i] > 0.0) || !(xs[i] > 0.0)) {
      throw DegenerateFit("slope fit needs positive values");
    }
    sx += std::log10(xs[i]);
    sy += std::log10(values[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = window.begin; i < window.end; ++i) {
    const double dx = std::log10(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log10(values[i]) - my);
  }
  if (!(sxx > 0.0)) throw DegenerateFit("slope fit needs distinct abscissae");
  return sxy / sxx;
}

inline double fit_loglog_slope(const DensitySweep& s, IndexWindow window) {
  return fit_loglog_slope(s.lambdas, s.values, window);
}

/// Points whose lambda lies within a factor 10 of the last one.
inline IndexWindow last_decade(const DensitySweep& s) {
  const double cutoff = s.lambdas.back() / 10.0 * (1.0 - 1e-12);
  std::size_t begin = s.lambdas.size() - 1;
  while (begin > 0 && s.lambdas[begin - 1] >= cutoff) --begin;
  return {begin, s.lambdas.size()};
}

struct TailSummary {
  double max_value;
  double final_value;
  bool strictly_decreasing;  // over the window
  double relative_change;    // |last - first| / first over the window
};

inline TailSummary summarize_tail(const DensitySweep& s, IndexWindow window) {
  if (window.end > s.values.size() || window.begin >= window.end) {
    throw InvalidScalar("tail window out of range");
  }
  TailSummary out{};
  out.max_value = *std::max_element(s.values.begin(), s.values.end());
  out.final_value = s.values.back();
  out.strictly_decreasing = true;
  for (std::size_t i = window.begin + 1; i < window.end; ++i) {
    if (!(s.values[i] < s.values[i - 1])) out.strictly_decreasing = false;
  }
  const double first = s.values[window.begin];
  const double last = s.values[window.end - 1];
  out.relative_change = std::abs(last - first) / first;
  return out;
}

inline RegimeLabel classify_regime(double alpha0, int d) {
  if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) throw InvalidScalar("alpha0 must be >= 0");
  if (d != 2 && d != 3) throw InvalidScalar("dimension must be 2 or 3");
  const double half = d / 2.0;
  if (alpha0 > d) return {Regime::Linear, 1.0};
  if (alpha0 == d) return {Regime::BoundaryUpper, std::nullopt};
  if (alpha0 > half) return {Regime::Sublinear, 2.0 - d / alpha0};
  if (alpha0 == half) return {Regime::BoundaryLower, std::nullopt};
  return {Regime::Decay, std::nullopt};
}

}  // namespace dualslope
