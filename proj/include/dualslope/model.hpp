#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "dualslope/error.hpp"

namespace dualslope {

enum class DimTag { TwoD, ThreeD, ThreeDPlus };

/// Coefficient V_d of the d-ball volume V_d r^d. The half-space deployment
/// uses exactly half of the full 3-ball coefficient.
inline double ball_volume_coeff(DimTag tag) noexcept {
  constexpr double kBall3 = 4.0 * std::numbers::pi / 3.0;
  switch (tag) {
    case DimTag::TwoD:
      return std::numbers::pi;
    case DimTag::ThreeD:
      return kBall3;
    case DimTag::ThreeDPlus:
      return kBall3 / 2.0;
  }
  return std::numbers::pi;
}

inline std::string_view to_string(DimTag tag) noexcept {
  switch (tag) {
    case DimTag::TwoD:
      return "2d";
    case DimTag::ThreeD:
      return "3d";
    case DimTag::ThreeDPlus:
      return "3d+";
  }
  return "?";
}

/// r^d for the small integer dimensions used here.
inline double power_of_dim(double r, int d) noexcept {
  double out = r;
  for (int i = 1; i < d; ++i) out *= r;
  return out;
}

struct Dimension {
  DimTag tag;
  int d;
  double v_d;

  static Dimension of(DimTag tag) noexcept {
    return {tag, tag == DimTag::TwoD ? 2 : 3, ball_volume_coeff(tag)};
  }
};

/// Piecewise power-law gain: r^-alpha0 up to the critical distance r_c and
/// eta * r^-alpha1 beyond it, with eta = r_c^(alpha1 - alpha0) so the two
/// branches meet at r_c.
class DualSlopePathLoss {
 public:
  DualSlopePathLoss(double alpha0, double alpha1, double r_c)
      : alpha0_(alpha0), alpha1_(alpha1), r_c_(r_c) {
    if (!std::isfinite(alpha0) || !std::isfinite(alpha1) || !std::isfinite(r_c)) {
      throw InvalidScalar("path loss parameters must be finite");
    }
    if (alpha0 < 0.0 || alpha0 > alpha1) {
      throw InvalidExponents("path loss exponents must satisfy 0 <= alpha0 <= alpha1 (got alpha0=" +
                             std::to_string(alpha0) + ", alpha1=" + std::to_string(alpha1) + ")");
    }
    if (r_c <= 0.0) {
      throw InvalidScalar("critical distance must be positive");
    }
    eta_ = std::pow(r_c, alpha1 - alpha0);
  }

  double alpha0() const noexcept { return alpha0_; }
  double alpha1() const noexcept { return alpha1_; }
  double r_c() const noexcept { return r_c_; }
  double eta() const noexcept { return eta_; }

  double close_in_gain(double r) const { return std::pow(r, -alpha0_); }
  double long_range_gain(double r) const { return eta_ * std::pow(r, -alpha1_); }

  double operator()(double r) const {
    if (!(r > 0.0)) {
      throw InvalidScalar("path loss distance must be positive");
    }
    return r <= r_c_ ? close_in_gain(r) : long_range_gain(r);
  }

 private:
  double alpha0_;
  double alpha1_;
  double r_c_;
  double eta_;
};

inline double path_loss(const DualSlopePathLoss& pl, double r) { return pl(r); }

class NetworkModel;
NetworkModel make_model(DimTag tag, double alpha0, double alpha1, double r_c, double lambda,
                        double sigma2);

/// Validated deployment: PPP density, path loss and noise in normalized units
/// (unit transmit power). Immutable; build with make_model().
class NetworkModel {
 public:
  const Dimension& dim() const noexcept { return dim_; }
  const DualSlopePathLoss& path_loss() const noexcept { return pl_; }
  double lambda() const noexcept { return lambda_; }
  double sigma2() const noexcept { return sigma2_; }

  /// lambda * V_d, the mean number of BSs per unit of r^d. Identical for
  /// (ThreeDPlus, lambda) and (ThreeD, lambda / 2).
  double density_volume() const noexcept { return lambda_ * dim_.v_d; }

  /// lambda V_d R_c^d: mean number of BSs within the critical distance.
  double reduced_density() const noexcept {
    return density_volume() * power_of_dim(pl_.r_c(), dim_.d);
  }

  NetworkModel with_lambda(double lambda) const {
    return make_model(dim_.tag, pl_.alpha0(), pl_.alpha1(), pl_.r_c(), lambda, sigma2_);
  }
  NetworkModel with_sigma2(double sigma2) const {
    return make_model(dim_.tag, pl_.alpha0(), pl_.alpha1(), pl_.r_c(), lambda_, sigma2);
  }

 private:
  friend NetworkModel make_model(DimTag, double, double, double, double, double);

  NetworkModel(Dimension dim, DualSlopePathLoss pl, double lambda, double sigma2)
      : dim_(dim), pl_(pl), lambda_(lambda), sigma2_(sigma2) {}

  Dimension dim_;
  DualSlopePathLoss pl_;
  double lambda_;
  double sigma2_;
};

inline NetworkModel make_model(DimTag tag, double alpha0, double alpha1, double r_c, double lambda,
                               double sigma2) {
  if (!std::isfinite(lambda) || !std::isfinite(sigma2)) {
    throw InvalidScalar("density and noise power must be finite");
  }
  DualSlopePathLoss pl(alpha0, alpha1, r_c);
  const Dimension dim = Dimension::of(tag);
  if (!(alpha1 > dim.d)) {
    throw DivergentInterference("long-range exponent alpha1=" + std::to_string(alpha1) +
                                " must exceed the dimension d=" + std::to_string(dim.d));
  }
  if (!(lambda > 0.0)) {
    throw InvalidScalar("BS density must be positive");
  }
  if (sigma2 < 0.0) {
    throw InvalidScalar("noise power must be non-negative");
  }
  return NetworkModel(dim, pl, lambda, sigma2);
}

/// Parameters of the planar deployment whose coverage equals that of a
/// d-dimensional one.
struct Equivalent2DParams {
  double alpha0p;
  double alpha1p;
  double lambdap;
  double r_c;
  double sigma2p;
};

inline Equivalent2DParams equivalent_2d(const NetworkModel& model) {
  const auto& pl = model.path_loss();
  const int d = model.dim().d;
  const double r_c = pl.r_c();
  Equivalent2DParams eq{};
  eq.alpha0p = (2.0 / d) * pl.alpha0();
  eq.alpha1p = (2.0 / d) * pl.alpha1();
  eq.lambdap = (power_of_dim(r_c, d) / (r_c * r_c)) *
               (model.dim().v_d / ball_volume_coeff(DimTag::TwoD)) * model.lambda();
  eq.r_c = r_c;
  eq.sigma2p = model.sigma2() * std::pow(r_c, pl.alpha0() - eq.alpha0p);
  return eq;
}

inline NetworkModel to_model(const Equivalent2DParams& eq) {
  return make_model(DimTag::TwoD, eq.alpha0p, eq.alpha1p, eq.r_c, eq.lambdap, eq.sigma2p);
}

}  // namespace dualslope
