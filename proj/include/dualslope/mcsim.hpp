#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "dualslope/error.hpp"
#include "dualslope/model.hpp"
#include "dualslope/rng.hpp"

namespace dualslope {

struct SimConfig {
  std::int64_t trials = 100000;
  std::uint64_t master_seed = 1;
  double tail_fraction_eps = 1e-3;
  bool record_distances = false;
  int workers = 1;
};

struct McEstimate {
  double threshold_t;
  double p_hat;
  std::int64_t trials;
  double ci_half_width;  // 3 sigma, normal approximation
  std::int64_t empty_realizations;
};

struct TrialOutcome {
  double sinr;
  double nearest_distance;
};

/// Per-trial SINRs; empty realizations hold -infinity so that they fail every
/// threshold.
struct SimResult {
  std::vector<double> sinr;
  std::vector<double> nearest_distance;  // filled when record_distances is set; NaN if empty
  std::int64_t empty_realizations = 0;
  double region_radius = 0.0;
};

inline void validate(const SimConfig& cfg) {
  if (cfg.trials < 1) throw InvalidScalar("trials must be >= 1");
  if (!(cfg.tail_fraction_eps > 0.0) || !(cfg.tail_fraction_eps < 0.1)) {
    throw InvalidScalar("tail_fraction_eps must lie in (0, 0.1)");
  }
  if (cfg.workers < 1) throw InvalidScalar("workers must be >= 1");
}

/// Radius beyond which the mean interference is at most eps times the mean
/// interference from the annulus (R_c, R]; never below 10 R_c.
inline double truncation_radius(const NetworkModel& model, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidScalar("eps must be positive");
  const auto& pl = model.path_loss();
  const double excess = pl.alpha1() - model.dim().d;
  const double r = pl.r_c() * std::pow((1.0 + eps) / eps, 1.0 / excess);
  return std::max(10.0 * pl.r_c(), r);
}

namespace detail {

// Received power h l(r) for a point at r = radius u^(1/d), u uniform.
struct GainSampler {
  explicit GainSampler(const NetworkModel& model, double radius)
      : d(model.dim().d),
        log_radius(std::log(radius)),
        log_rc(std::log(model.path_loss().r_c())),
        alpha0(model.path_loss().alpha0()),
        alpha1(model.path_loss().alpha1()),
        log_eta(std::log(model.path_loss().eta())) {}

  double log_distance(double u) const noexcept { return log_radius + std::log(u) / d; }

  double gain(double log_r) const noexcept {
    return log_r <= log_rc ? std::exp(-alpha0 * log_r) : std::exp(log_eta - alpha1 * log_r);
  }

  int d;
  double log_radius;
  double log_rc;
  double alpha0;
  double alpha1;
  double log_eta;
};

// Mean point count over the sampled ball and whether points are kept only in
// the upper half. Half-space models sample the full ball at the same density
// and drop points whose final coordinate is negative.
inline std::pair<double, bool> ball_intensity(const NetworkModel& model, double radius) {
  const bool half = model.dim().tag == DimTag::ThreeDPlus;
  const double v = half ? ball_volume_coeff(DimTag::ThreeD) : model.dim().v_d;
  return {model.lambda() * v * power_of_dim(radius, model.dim().d), half};
}

// A uniform direction in 3D has a uniform final coordinate on [-1, 1], so its
// sign is a fair coin; bits are drawn 64 at a time.
class SignBits {
 public:
  bool upper(Xoshiro256pp& rng) noexcept {
    if (left_ == 0) {
      bits_ = rng();
      left_ = 64;
    }
    const bool keep = (bits_ & 1U) != 0;
    bits_ >>= 1;
    --left_;
    return keep;
  }

 private:
  std::uint64_t bits_ = 0;
  int left_ = 0;
};

}  // namespace detail

/// One PPP realization in the ball of the given radius with Rayleigh fading
/// and nearest-BS association. Returns nothing for an empty realization. With
/// with_interference = false the result is the SNR of the serving link.
inline std::optional<TrialOutcome> run_trial(const NetworkModel& model, double region_radius,
                                             Xoshiro256pp& rng, bool with_interference = true) {
  if (!(region_radius > 0.0)) throw InvalidScalar("region radius must be positive");
  const detail::GainSampler sampler(model, region_radius);
  const auto [mean_count, half] = detail::ball_intensity(model, region_radius);
  std::poisson_distribution<std::int64_t> count_dist(mean_count);
  const std::int64_t n = count_dist(rng);
  detail::SignBits signs;

  double nearest_log_r = std::numeric_limits<double>::infinity();
  double serving = 0.0;
  double interference = 0.0;
  bool any = false;
  for (std::int64_t i = 0; i < n; ++i) {
    if (half && !signs.upper(rng)) continue;
    const double log_r = sampler.log_distance(rng.uniform_pos());
    const double power = rng.exponential() * sampler.gain(log_r);
    if (log_r < nearest_log_r) {
      interference += serving;
      serving = power;
      nearest_log_r = log_r;
      any = true;
    } else {
      interference += power;
    }
  }
  if (!any) return std::nullopt;
  const double denom = model.sigma2() + (with_interference ? interference : 0.0);
  const double sinr = denom == 0.0 ? std::numeric_limits<double>::infinity() : serving / denom;
  return TrialOutcome{sinr, std::exp(nearest_log_r)};
}

/// Sum of faded received powers from the PPP restricted to inner < |x| <= outer.
inline double sample_interference_outside(const NetworkModel& model, double inner, double outer,
                                          Xoshiro256pp& rng) {
  if (!(inner >= 0.0) || !(outer > inner)) throw InvalidScalar("need 0 <= inner < outer");
  const detail::GainSampler sampler(model, outer);
  const auto [mean_count, half] = detail::ball_intensity(model, outer);
  const double u_min = power_of_dim(inner / outer, model.dim().d);
  // Points inside `inner` are discarded; the count is for the whole ball.
  std::poisson_distribution<std::int64_t> count_dist(mean_count);
  const std::int64_t n = count_dist(rng);
  detail::SignBits signs;
  double total = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (half && !signs.upper(rng)) continue;
    const double u = rng.uniform_pos();
    if (u <= u_min) continue;
    total += rng.exponential() * sampler.gain(sampler.log_distance(u));
  }
  return total;
}

/// Runs cfg.trials trials. Trial i always draws from trial_stream(seed, i), so
/// the result does not depend on cfg.workers.
inline SimResult simulate(const NetworkModel& model, const SimConfig& cfg,
                          bool with_interference = true) {
  validate(cfg);
  const double radius = truncation_radius(model, cfg.tail_fraction_eps);
  const auto trials = static_cast<std::size_t>(cfg.trials);
  SimResult out;
  out.region_radius = radius;
  out.sinr.assign(trials, 0.0);
  if (cfg.record_distances) out.nearest_distance.assign(trials, 0.0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto rng = trial_stream(cfg.master_seed, i);
      const auto outcome = run_trial(model, radius, rng, with_interference);
      out.sinr[i] = outcome ? outcome->sinr : -std::numeric_limits<double>::infinity();
      if (cfg.record_distances) {
        out.nearest_distance[i] =
            outcome ? outcome->nearest_distance : std::numeric_limits<double>::quiet_NaN();
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), trials);
  if (workers <= 1) {
    work(0, trials);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(trials, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }
  out.empty_realizations = std::count_if(out.sinr.begin(), out.sinr.end(), [](double s) {
    return s == -std::numeric_limits<double>::infinity();
  });
  return out;
}

/// Fraction of trials with SINR above each threshold; all thresholds share the
/// same trials.
inline std::vector<McEstimate> estimate_from(const SimResult& sim, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw InvalidScalar("threshold grid must be nonempty");
  const auto n = static_cast<std::int64_t>(sim.sinr.size());
  std::vector<McEstimate> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const auto hits = std::count_if(sim.sinr.begin(), sim.sinr.end(), [t](double s) { return s > t; });
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    out.push_back({t, p, n, 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)),
                   sim.empty_realizations});
  }
  return out;
}

inline std::vector<McEstimate> estimate_coverage(const NetworkModel& model,
                                                 const std::vector<double>& t_grid,
                                                 const SimConfig& cfg,
                                                 bool with_interference = true) {
  if (t_grid.empty()) throw InvalidScalar("threshold grid must be nonempty");
  return estimate_from(simulate(model, cfg, with_interference), t_grid);
}

}  // namespace dualslope
