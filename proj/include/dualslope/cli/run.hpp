#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dualslope/cli/figures.hpp"
#include "dualslope/cli/format.hpp"
#include "dualslope/cli/options.hpp"
#include "dualslope/cli/svg.hpp"
#include "dualslope/coverage.hpp"
#include "dualslope/mcsim.hpp"
#include "dualslope/throughput.hpp"

namespace dualslope::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDisagree = 3;

namespace detail {

inline std::ofstream open_file(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  return f;
}

// The CSV target: a file when a path is given, otherwise `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) file_.emplace(open_file(path));
  }
  std::ostream& stream() { return file_ ? *file_ : fallback_; }

 private:
  std::ostream& fallback_;
  std::optional<std::ofstream> file_;
};

inline void maybe_svg(const std::string& path, const ChartSpec& chart,
                      const std::vector<Series>& series) {
  if (path.empty()) return;
  auto f = open_file(path);
  write_svg(f, chart, series);
}

inline double single_threshold(const RunSpec& spec) {
  if (spec.thresholds.size() != 1) throw InvalidScalar("density sweeps take a single threshold");
  return spec.thresholds.front();
}

inline SimConfig sim_config(const RunSpec& spec, double default_eps) {
  SimConfig cfg;
  cfg.trials = spec.trials;
  cfg.master_seed = spec.seed;
  cfg.tail_fraction_eps = spec.eps.value_or(default_eps);
  cfg.workers = spec.workers;
  return cfg;
}

inline int run_coverage(const RunSpec& spec, std::ostream& out) {
  const auto m = spec.model.build();
  CsvWriter csv(out);
  csv.header({"T_dB", "Pc_sinr", "Pc_sir", "Pc_snr"});
  std::vector<Series> series{{"SINR", {}, {}}, {"SIR", {}, {}, false, true}, {"SNR", {}, {}}};
  for (std::size_t i = 0; i < spec.thresholds.size(); ++i) {
    const double t = spec.thresholds[i];
    const double vals[] = {coverage_sinr_any(m, t), coverage_sir_any(m, t), coverage_snr(m, t)};
    csv.row(spec.thresholds_db[i], vals[0], vals[1], vals[2]);
    for (int k = 0; k < 3; ++k) {
      series[k].xs.push_back(spec.thresholds_db[i]);
      series[k].ys.push_back(vals[k]);
    }
  }
  maybe_svg(spec.svg_path, {"Coverage probability", "T (dB)", "P_c", false, false, 0.0, 1.0},
            series);
  return kExitOk;
}

inline int run_sweep(const RunSpec& spec, SweepMetric metric, const char* value_column,
                     std::ostream& out, std::ostream& log) {
  const auto m = spec.model.build();
  const auto s = sweep(m, single_threshold(spec),
                       log_spaced(spec.lambda_min, spec.lambda_max, spec.per_decade), metric);
  CsvWriter csv(out);
  csv.header({"lambda", value_column});
  for (std::size_t i = 0; i < s.lambdas.size(); ++i) csv.row(s.lambdas[i], s.values[i]);

  if (metric == SweepMetric::Throughput) {
    const auto label = classify_regime(spec.model.alpha0, m.dim().d);
    log << "regime: " << to_string(label.tag);
    if (label.exponent) log << " (predicted slope " << format_number(*label.exponent) << ")";
    log << '\n';
    const auto window = last_decade(s);
    if (window.end - window.begin >= 3) {
      try {
        log << "last-decade log-log slope: " << format_number(fit_loglog_slope(s, window)) << '\n';
      } catch (const DegenerateFit& e) {
        log << "last-decade slope unavailable: " << e.what() << '\n';
      }
    }
  }
  const bool log_y = metric == SweepMetric::Throughput;
  maybe_svg(spec.svg_path,
            {std::string(to_string(metric)) + " vs density", "lambda", value_column, true, log_y},
            {{std::string(to_string(metric)), s.lambdas, s.values}});
  return kExitOk;
}

inline int run_simulate(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  const auto m = spec.model.build();
  const auto cfg = sim_config(spec, 1e-3);
  const auto sim = simulate(m, cfg);
  const auto est = estimate_from(sim, spec.thresholds);
  CsvWriter csv(out);
  csv.header({"T_dB", "p_hat", "ci"});
  Series series{"Monte Carlo", {}, {}, true};
  for (std::size_t i = 0; i < est.size(); ++i) {
    csv.row(spec.thresholds_db[i], est[i].p_hat, est[i].ci_half_width);
    series.xs.push_back(spec.thresholds_db[i]);
    series.ys.push_back(est[i].p_hat);
  }
  log << "trials=" << cfg.trials << " region_radius=" << format_number(sim.region_radius)
      << " empty_realizations=" << sim.empty_realizations << '\n';
  maybe_svg(spec.svg_path, {"Simulated coverage", "T (dB)", "p_hat", false, false, 0.0, 1.0},
            {series});
  return kExitOk;
}

inline int run_compare(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  const auto m = spec.model.build();
  const auto cfg = sim_config(spec, 1e-3);
  const auto est = estimate_coverage(m, spec.thresholds, cfg);
  CsvWriter csv(out);
  csv.header({"T_dB", "Pc_analytic", "p_hat", "ci", "agree"});
  Series analytic{"closed form", {}, {}};
  Series mc{"Monte Carlo", {}, {}, true};
  int failures = 0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double pc = coverage_sinr_any(m, spec.thresholds[i]);
    const bool agree = std::abs(est[i].p_hat - pc) <= est[i].ci_half_width + spec.compare_margin;
    if (!agree) ++failures;
    csv.row(spec.thresholds_db[i], pc, est[i].p_hat, est[i].ci_half_width, agree ? "pass" : "fail");
    analytic.xs.push_back(spec.thresholds_db[i]);
    analytic.ys.push_back(pc);
    mc.xs.push_back(spec.thresholds_db[i]);
    mc.ys.push_back(est[i].p_hat);
  }
  maybe_svg(spec.svg_path, {"Closed form vs simulation", "T (dB)", "P_c", false, false, 0.0, 1.0},
            {analytic, mc});
  if (failures > 0) {
    log << failures << " of " << est.size() << " thresholds disagree beyond ci + "
        << format_number(spec.compare_margin) << '\n';
    return kExitDisagree;
  }
  return kExitOk;
}

inline std::filesystem::path figure_dir(const RunSpec& spec) {
  if (!spec.out_dir.empty()) return spec.out_dir;
  if (const char* env = std::getenv("DUALSLOPE_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

inline int run_figure1(const RunSpec& spec, const std::filesystem::path& dir, std::ostream& log) {
  const double eps = spec.eps.value_or(kFig1Eps);
  const auto data = figure1_data(spec.trials, spec.seed, eps, spec.workers);
  auto f = open_file(dir / "fig1.csv");
  CsvWriter csv(f);
  csv.comment("figure 1: SINR coverage, alpha0=3.3 alpha1=5 sigma2=1 rc=0.4; lambda in BS per "
              "unit volume (normalized units); trials=" + std::to_string(spec.trials) +
              " seed=" + std::to_string(spec.seed) + " eps=" + format_number(eps));
  std::vector<std::string> header{"T_dB"};
  for (const auto& c : data.curves) header.push_back("Pc_" + c.label);
  for (const auto& c : data.curves) {
    header.push_back("mc_" + c.label);
    header.push_back("ci_" + c.label);
  }
  csv.header(header);
  int failures = 0;
  for (std::size_t i = 0; i < data.t_db.size(); ++i) {
    std::vector<double> row{data.t_db[i]};
    for (const auto& c : data.curves) row.push_back(c.analytic[i]);
    for (const auto& c : data.curves) {
      row.push_back(c.mc[i].p_hat);
      row.push_back(c.mc[i].ci_half_width);
      if (std::abs(c.mc[i].p_hat - c.analytic[i]) > c.mc[i].ci_half_width + spec.compare_margin) {
        ++failures;
      }
    }
    csv.row(row);
  }
  std::vector<Series> series;
  for (const auto& c : data.curves) {
    series.push_back({"closed form " + c.label, data.t_db, c.analytic, false, c.tag == DimTag::ThreeDPlus});
  }
  for (const auto& c : data.curves) {
    Series s{"simulation " + c.label, data.t_db, {}, true};
    for (const auto& e : c.mc) s.ys.push_back(e.p_hat);
    series.push_back(std::move(s));
  }
  auto svg = open_file(dir / "fig1.svg");
  write_svg(svg, {"SINR coverage, 3D and 3D+", "T (dB)", "P_c", false, false, 0.0, 1.0}, series);
  log << "figure 1: " << failures << " simulated points outside ci + "
      << format_number(spec.compare_margin) << "; region radius "
      << format_number(data.region_radius) << '\n';
  return kExitOk;
}

inline std::string curve_label(const DensityCurve& c) {
  std::string metric = c.metric == SweepMetric::CoverageSIR ? "Pc_sir"
                       : c.metric == SweepMetric::Throughput ? "tau"
                                                             : "Pc_sinr";
  return metric + "_a" + format_number(c.alpha0);
}

inline int run_density_figure(int number, const RunSpec& spec, const std::filesystem::path& dir,
                              std::ostream& log) {
  const auto fig = number == 2 ? figure2_data(spec.per_decade) : figure3_data(spec.per_decade);
  const std::string stem = "fig" + std::to_string(number);
  auto f = open_file(dir / (stem + ".csv"));
  CsvWriter csv(f);
  csv.comment(number == 2
                  ? "figure 2: SINR and SIR coverage vs density, alpha0 in {2.5, 3.5}, alpha1=4 "
                    "rc=0.4 sigma2=1 T=1; 3d; lambda in BS per unit volume (normalized units)"
                  : "figure 3: potential throughput vs density, alpha0 in {1, 1.5, 2, 3}, "
                    "alpha1=4 rc=0.4 sigma2=1 T=1; 3d; lambda in BS per unit volume "
                    "(normalized units)");
  std::vector<std::string> header{"lambda"};
  for (const auto& c : fig.curves) header.push_back(curve_label(c));
  csv.header(header);
  for (std::size_t i = 0; i < fig.lambdas.size(); ++i) {
    std::vector<double> row{fig.lambdas[i]};
    for (const auto& c : fig.curves) row.push_back(c.values[i]);
    csv.row(row);
  }
  std::vector<Series> series;
  for (const auto& c : fig.curves) {
    series.push_back({curve_label(c), fig.lambdas, c.values, false,
                      c.metric == SweepMetric::CoverageSIR});
  }
  auto svg = open_file(dir / (stem + ".svg"));
  if (number == 2) {
    write_svg(svg, {"Coverage vs density (3D)", "lambda", "P_c", true, false, 0.0, 1.0}, series);
  } else {
    write_svg(svg, {"Potential throughput vs density (3D)", "lambda", "tau", true, true}, series);
    for (const auto& c : fig.curves) {
      const DensitySweep s{fig.lambdas, c.values, c.metric,
                           make_model(DimTag::ThreeD, c.alpha0, 4.0, kFigRc, 1.0, kFigSigma2), 1.0};
      const auto label = classify_regime(c.alpha0, 3);
      log << "alpha0=" << format_number(c.alpha0) << ": " << to_string(label.tag)
          << ", last-decade slope " << format_number(fit_loglog_slope(s, last_decade(s))) << '\n';
    }
  }
  return kExitOk;
}

inline int run_figure(const RunSpec& spec, std::ostream& log) {
  const auto dir = figure_dir(spec);
  std::filesystem::create_directories(dir);
  if (spec.figure == 1) return run_figure1(spec, dir, log);
  return run_density_figure(spec.figure, spec, dir, log);
}

}  // namespace detail

/// Executes a parsed spec. CSV goes to spec.csv_path or `out`; diagnostics to
/// `log`. Returns 0, 1 on any error, 3 when `compare` finds disagreement.
inline int run(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  try {
    detail::Sink sink(spec.csv_path, out);
    std::ostream& csv = sink.stream();
    switch (spec.command) {
      case Subcommand::Coverage: return detail::run_coverage(spec, csv);
      case Subcommand::Sweep: return detail::run_sweep(spec, spec.metric, "value", csv, log);
      case Subcommand::Throughput:
        return detail::run_sweep(spec, SweepMetric::Throughput, "throughput", csv, log);
      case Subcommand::Simulate: return detail::run_simulate(spec, csv, log);
      case Subcommand::Compare: return detail::run_compare(spec, csv, log);
      case Subcommand::Figure: return detail::run_figure(spec, log);
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

/// Parses argv (argv[0] is the program name) and runs it.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  Parser parser;
  RunSpec spec;
  try {
    parser.app().parse(argc, argv);
    spec = parser.finish();
  } catch (const CLI::ParseError& e) {
    const int code = parser.app().exit(e, out, log);
    return code == 0 ? kExitOk : kExitError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
  return run(spec, out, log);
}

inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& log) {
  std::vector<const char*> argv{"dualslope"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return main(static_cast<int>(argv.size()), argv.data(), out, log);
}

}  // namespace dualslope::cli
