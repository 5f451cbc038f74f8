#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dualslope/cli/format.hpp"
#include "dualslope/coverage.hpp"
#include "dualslope/mcsim.hpp"
#include "dualslope/model.hpp"
#include "dualslope/throughput.hpp"

namespace dualslope::cli {

// Shared path loss of all three figures.
inline constexpr double kFigRc = 0.4;
inline constexpr double kFigSigma2 = 1.0;
// Truncation used by the figure 1 preset: keeps 10^5 trials per curve within
// a desk-scale budget; bias stays near 1e-3 in probability.
inline constexpr double kFig1Eps = 5e-3;

struct Fig1Curve {
  DimTag tag;
  double lambda;
  std::string label;
  std::vector<double> analytic;
  std::vector<McEstimate> mc;
};

struct Fig1Data {
  std::vector<double> t_db;
  std::vector<Fig1Curve> curves;
  double region_radius;
};

/// SINR coverage for 3D (lambda 10), 3D+ (lambda 10) and 3D (lambda 5) with
/// alpha0 3.3, alpha1 5, closed form and simulation, -10..20 dB.
inline Fig1Data figure1_data(std::int64_t trials, std::uint64_t seed, double eps, int workers) {
  Fig1Data data;
  for (int db = -10; db <= 20; ++db) data.t_db.push_back(db);
  std::vector<double> ts;
  for (double db : data.t_db) ts.push_back(db_to_linear(db));
  data.curves = {{DimTag::ThreeD, 10.0, "3d_lambda10", {}, {}},
                 {DimTag::ThreeDPlus, 10.0, "3dplus_lambda10", {}, {}},
                 {DimTag::ThreeD, 5.0, "3d_lambda5", {}, {}}};
  for (std::size_t c = 0; c < data.curves.size(); ++c) {
    auto& curve = data.curves[c];
    const auto m = make_model(curve.tag, 3.3, 5.0, kFigRc, curve.lambda, kFigSigma2);
    for (double t : ts) curve.analytic.push_back(coverage_sinr(m, t));
    SimConfig cfg;
    cfg.trials = trials;
    cfg.master_seed = seed + c;
    cfg.tail_fraction_eps = eps;
    cfg.workers = workers;
    curve.mc = estimate_coverage(m, ts, cfg);
    data.region_radius = truncation_radius(m, eps);
  }
  return data;
}

struct DensityCurve {
  double alpha0;
  SweepMetric metric;
  std::vector<double> values;
};

struct DensityFigure {
  std::vector<double> lambdas;
  std::vector<DensityCurve> curves;
};

inline std::vector<double> figure_lambdas(int per_decade) { return log_spaced(1e-2, 1e6, per_decade); }

/// Figure 2: SINR and SIR coverage against density, alpha0 2.5 and 3.5,
/// alpha1 4, T = 1.
inline DensityFigure figure2_data(int per_decade) {
  DensityFigure fig{figure_lambdas(per_decade), {}};
  for (double a0 : {2.5, 3.5}) {
    const auto base = make_model(DimTag::ThreeD, a0, 4.0, kFigRc, 1.0, kFigSigma2);
    for (auto metric : {SweepMetric::CoverageSINR, SweepMetric::CoverageSIR}) {
      fig.curves.push_back({a0, metric, sweep(base, 1.0, fig.lambdas, metric).values});
    }
  }
  return fig;
}

/// Figure 3: potential throughput against density, alpha0 in {1, 1.5, 2, 3},
/// alpha1 4, T = 1.
inline DensityFigure figure3_data(int per_decade) {
  DensityFigure fig{figure_lambdas(per_decade), {}};
  for (double a0 : {1.0, 1.5, 2.0, 3.0}) {
    const auto base = make_model(DimTag::ThreeD, a0, 4.0, kFigRc, 1.0, kFigSigma2);
    fig.curves.push_back(
        {a0, SweepMetric::Throughput, sweep(base, 1.0, fig.lambdas, SweepMetric::Throughput).values});
  }
  return fig;
}

}  // namespace dualslope::cli
