#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dualslope/cli/format.hpp"
#include "dualslope/error.hpp"
#include "dualslope/model.hpp"
#include "dualslope/throughput.hpp"

namespace dualslope::cli {

enum class Subcommand { Coverage, Sweep, Throughput, Simulate, Compare, Figure };

struct ModelParams {
  DimTag dim = DimTag::ThreeD;
  double alpha0 = 3.3;
  double alpha1 = 5.0;
  double rc = 0.4;
  double lambda = 10.0;
  double sigma2 = 1.0;

  NetworkModel build() const { return make_model(dim, alpha0, alpha1, rc, lambda, sigma2); }
};

struct RunSpec {
  Subcommand command = Subcommand::Coverage;
  ModelParams model;
  // Thresholds, linear and in dB, index-aligned.
  std::vector<double> thresholds{1.0};
  std::vector<double> thresholds_db{0.0};
  double lambda_min = 1e-2;
  double lambda_max = 1e4;
  int per_decade = 8;
  SweepMetric metric = SweepMetric::CoverageSINR;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  std::optional<double> eps;  // unset: 1e-3, or the figure preset's own value
  int workers = 1;
  double compare_margin = 0.005;
  int figure = 0;
  std::string csv_path;  // empty: standard output
  std::string svg_path;
  std::string out_dir;   // figures; falls back to $DUALSLOPE_OUTPUT_DIR, then "."
};

inline DimTag parse_dim(const std::string& s) {
  if (s == "2d") return DimTag::TwoD;
  if (s == "3d") return DimTag::ThreeD;
  if (s == "3d+") return DimTag::ThreeDPlus;
  throw InvalidScalar("unknown dimension '" + s + "' (expected 2d, 3d or 3d+)");
}

inline SweepMetric parse_metric(const std::string& s) {
  if (s == "sinr") return SweepMetric::CoverageSINR;
  if (s == "sir") return SweepMetric::CoverageSIR;
  if (s == "throughput") return SweepMetric::Throughput;
  throw InvalidScalar("unknown metric '" + s + "' (expected sinr, sir or throughput)");
}

/// "a:b:step" (inclusive) or a single value, in dB.
inline std::vector<double> parse_db_range(const std::string& text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    const std::string piece = text.substr(start, colon - start);
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw InvalidScalar("bad dB threshold spec '" + text + "'");
    }
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw InvalidScalar("dB range must be lo:hi:step, got '" + text + "'");
  const double lo = parts[0];
  const double hi = parts[1];
  const double step = parts[2];
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(hi) || !std::isfinite(lo)) {
    throw InvalidScalar("dB range needs lo <= hi and a positive step");
  }
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out;
  for (long k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  return out;
}

/// Builds the parser; results land in `spec` after app.parse().
class Parser {
 public:
  Parser() : app_("Coverage and throughput of Poisson cellular networks under dual-slope path loss") {
    app_.set_config("--config", "", "flat key = value file; flags given on the command line win");
    app_.require_subcommand(1);

    app_.add_option("--dim", dim_, "deployment: 2d, 3d or 3d+")->capture_default_str();
    app_.add_option("--a0", spec_.model.alpha0, "close-in exponent alpha0")->capture_default_str();
    app_.add_option("--a1", spec_.model.alpha1, "long-range exponent alpha1")->capture_default_str();
    app_.add_option("--rc", spec_.model.rc, "critical distance R_c")->capture_default_str();
    app_.add_option("--lambda", spec_.model.lambda, "BS density")->capture_default_str();
    app_.add_option("--sigma2", spec_.model.sigma2, "noise power")->capture_default_str();
    auto* tdb = app_.add_option("--tdb", tdb_, "threshold in dB: value or lo:hi:step");
    app_.add_option("--t", t_linear_, "linear thresholds, comma separated")
        ->delimiter(',')
        ->excludes(tdb);
    app_.add_option("--lambda-min", spec_.lambda_min)->capture_default_str();
    app_.add_option("--lambda-max", spec_.lambda_max)->capture_default_str();
    app_.add_option("--per-decade", spec_.per_decade)->capture_default_str();
    app_.add_option("--metric", metric_, "sweep metric: sinr, sir or throughput")
        ->capture_default_str();
    app_.add_option("--trials", spec_.trials)->capture_default_str();
    app_.add_option("--seed", spec_.seed)->capture_default_str();
    app_.add_option("--eps", eps_, "truncation tail fraction");
    app_.add_option("--workers", spec_.workers)->capture_default_str();
    app_.add_option("--margin", spec_.compare_margin, "compare: allowed excess over the CI")
        ->capture_default_str();
    app_.add_option("--csv", spec_.csv_path, "CSV output path (default stdout)");
    app_.add_option("--svg", spec_.svg_path, "SVG chart output path");
    app_.add_option("--out-dir", spec_.out_dir, "figure output directory");

    add(Subcommand::Coverage, "coverage", "SINR, SIR and SNR coverage over thresholds");
    add(Subcommand::Sweep, "sweep", "one metric over a log-spaced density sweep");
    add(Subcommand::Throughput, "throughput", "potential throughput over a density sweep");
    add(Subcommand::Simulate, "simulate", "Monte Carlo coverage estimates");
    add(Subcommand::Compare, "compare", "closed form against Monte Carlo");
    auto* fig = add(Subcommand::Figure, "figure", "reproduce figure 1, 2 or 3");
    fig->add_option("number", spec_.figure)->required()->check(CLI::Range(1, 3));
  }

  CLI::App& app() { return app_; }

  RunSpec finish() {
    for (const auto& [cmd, sub] : subs_) {
      if (sub->parsed()) spec_.command = cmd;
    }
    spec_.model.dim = parse_dim(dim_);
    spec_.metric = parse_metric(metric_);
    spec_.eps = eps_;
    if (!t_linear_.empty()) {
      spec_.thresholds = t_linear_;
      spec_.thresholds_db.clear();
      for (double t : t_linear_) {
        if (!(t > 0.0)) throw InvalidScalar("linear thresholds must be positive");
        spec_.thresholds_db.push_back(linear_to_db(t));
      }
    } else if (!tdb_.empty()) {
      spec_.thresholds_db = parse_db_range(tdb_);
      spec_.thresholds.clear();
      for (double db : spec_.thresholds_db) spec_.thresholds.push_back(db_to_linear(db));
    }
    if (!(spec_.lambda_min > 0.0) || !(spec_.lambda_max >= spec_.lambda_min)) {
      throw InvalidScalar("density range needs 0 < lambda-min <= lambda-max");
    }
    if (spec_.per_decade < 1) throw InvalidScalar("per-decade must be >= 1");
    if (spec_.trials < 1) throw InvalidScalar("trials must be >= 1");
    if (spec_.workers < 1) throw InvalidScalar("workers must be >= 1");
    return spec_;
  }

 private:
  CLI::App* add(Subcommand cmd, const char* name, const char* help) {
    auto* sub = app_.add_subcommand(name, help);
    sub->fallthrough();
    subs_.emplace_back(cmd, sub);
    return sub;
  }

  CLI::App app_;
  RunSpec spec_;
  std::string dim_ = "3d";
  std::string metric_ = "sinr";
  std::string tdb_;
  std::vector<double> t_linear_;
  std::optional<double> eps_;
  std::vector<std::pair<Subcommand, CLI::App*>> subs_;
};

}  // namespace dualslope::cli
