#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "dualslope/specfun.hpp"
#include "oracles.hpp"

namespace dualslope {
namespace {

TEST(CFunc, ZeroArgumentIsOne) {
  for (double b : {-3.0, -1.5, 0.3, 1.0, 2.0}) EXPECT_EQ(c_func(b, 0.0), 1.0);
}

TEST(CFunc, SpotValues) {
  EXPECT_NEAR(c_func(1.0, 1.0), std::numbers::ln2, 1e-12);
  EXPECT_NEAR(c_func(-2.0, 1.0), 1.0 + std::numbers::pi / 4.0, 1e-12);
  EXPECT_NEAR(c_func(0.5, 1.0), 2.0 * (1.0 - std::numbers::ln2), 1e-12);
}

TEST(CFunc, ClosedFormReductions) {
  // C(1, z) = ln(1 + z) / z, C(1/2, z) = (2/z)(1 - ln(1 + z)/z),
  // C(-2, z) = 1 + sqrt(z) atan(sqrt(z)).
  for (double z : {0.01, 0.3, 0.5, 0.7, 1.9, 2.5, 4.0, 4.5, 10.0, 1e3, 1e6, 1e12}) {
    SCOPED_TRACE(z);
    EXPECT_NEAR(c_func(1.0, z), std::log1p(z) / z, 1e-12 * c_func(1.0, z));
    const double half = 2.0 / z * (1.0 - std::log1p(z) / z);
    EXPECT_NEAR(c_func(0.5, z), half, 1e-10 * half);
    const double s = std::sqrt(z);
    EXPECT_NEAR(c_func(-2.0, z), 1.0 + s * std::atan(s), 1e-12 * (1.0 + s * std::atan(s)));
  }
}

TEST(CFunc, MatchesIntegralDefinitions) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> log_z(-3.0, 4.0);
  std::uniform_real_distribution<double> pos_b(0.2, 2.5);
  std::uniform_real_distribution<double> neg_a(1.1, 4.0);
  for (int i = 0; i < 150; ++i) {
    const double z = std::pow(10.0, log_z(gen));
    const double b = pos_b(gen);
    const double a = neg_a(gen);
    SCOPED_TRACE(testing::Message() << "z=" << z << " b=" << b << " a=" << a);
    const double pos = oracle::c_func(b, z);
    EXPECT_NEAR(c_func(b, z), pos, 1e-10 * pos);
    const double neg = oracle::c_func(-a, z);
    EXPECT_NEAR(c_func(-a, z), neg, 1e-9 * neg);
  }
}

TEST(CFunc, MonotoneInZ) {
  for (double b : {0.25, 1.0 / 3.0, 0.9, 1.1, 2.0, -1.2, -4.0 / 3.0, -2.0, -3.5}) {
    double previous = c_func(b, 0.0);
    for (double z = 1e-3; z < 1e8; z *= 1.07) {
      const double c = c_func(b, z);
      if (b > 0) {
        EXPECT_LT(c, previous) << "b=" << b << " z=" << z;
      } else {
        EXPECT_GT(c, previous) << "b=" << b << " z=" << z;
      }
      previous = c;
    }
  }
}

TEST(CFunc, ContinuousAcrossRegionBoundaries) {
  for (double b : {0.4, 1.0, 1.7, -1.3, -2.0, -2.9}) {
    for (double edge : {0.5, 2.0, 4.0}) {
      const double lo = c_func(b, std::nextafter(edge, 0.0));
      const double hi = c_func(b, std::nextafter(edge, 10.0));
      EXPECT_NEAR(lo, hi, 1e-13 * std::abs(lo)) << "b=" << b << " edge=" << edge;
    }
  }
}

TEST(CFunc, LimitsAndErrors) {
  EXPECT_EQ(c_func(1.5, std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_THROW(c_func(0.0, 1.0), SingularParameter);
  EXPECT_THROW(c_func(-1.0, 1.0), SingularParameter);
  EXPECT_THROW(c_func(-0.5, 1.0), SingularParameter);
  EXPECT_THROW(c_func(1.0, -1.0), InvalidScalar);
  // 1/b = -2.5 is not a pole.
  EXPECT_NO_THROW(c_func(-0.4, 3.0));
}

TEST(CFunc, NonIntegerPoleFreeNegativeParameter) {
  // b = -0.4 (a < 1): compare the 1/z continuation with the Pfaff series at the
  // region boundary and with the direct series below it.
  EXPECT_NEAR(c_func(-0.4, std::nextafter(2.0, 0.0)), c_func(-0.4, std::nextafter(2.0, 3.0)),
              1e-12);
}

TEST(Rho, CancelsToFarCoefficientAtOne) {
  for (double b : {0.5, 1.1, 2.0}) {
    for (double a : {1.2, 5.0 / 3.0, 3.0}) {
      for (double t : {0.01, 1.0, 100.0}) {
        EXPECT_NEAR(rho(b, a, t, 1.0), c_func(-a, t), 1e-14 * c_func(-a, t));
      }
    }
  }
}

TEST(Rho, SmallThresholdLimitIsR) {
  for (double r : {1e-6, 0.01, 0.3, 0.9}) {
    EXPECT_NEAR(rho(1.1, 5.0 / 3.0, 1e-12, r), r, 1e-9);
    EXPECT_NEAR(rho(0.5, 2.0, 1e-12, r), r, 1e-5);
  }
}

TEST(Rho, FigureOneParameterPoint) {
  const double b = 1.1;
  const double a = 5.0 / 3.0;
  EXPECT_NEAR(rho(b, a, 1.0, 0.5), oracle::rho(b, a, 1.0, 0.5), 1e-8);
}

TEST(Rho, MatchesDirectQuadratureOfInnerIntegral) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const int d = u(gen) < 0.5 ? 2 : 3;
    const double alpha0 = 0.8 + 3.2 * u(gen);
    const double alpha1 = std::max(alpha0, d + 0.6) + (6.0 - std::max(alpha0, d + 0.6)) * u(gen);
    const double t = std::pow(10.0, -2.0 + 4.0 * u(gen));
    const double r = std::pow(10.0, -4.0 * u(gen));
    const double b = alpha0 / d;
    const double a = alpha1 / d;
    SCOPED_TRACE(testing::Message() << "b=" << b << " a=" << a << " t=" << t << " r=" << r);
    EXPECT_NEAR(rho(b, a, t, r), oracle::rho(b, a, t, r), 1e-8);
  }
}

TEST(Rho, RejectsBadArguments) {
  EXPECT_THROW(rho(0.0, 2.0, 1.0, 0.5), SingularParameter);
  EXPECT_THROW(rho(1.0, 1.0, 1.0, 0.5), DivergentInterference);
  EXPECT_THROW(rho(1.0, 2.0, 0.0, 0.5), InvalidScalar);
  EXPECT_THROW(rho(1.0, 2.0, 1.0, 0.0), InvalidScalar);
  EXPECT_THROW(rho(1.0, 2.0, 1.0, 1.5), InvalidScalar);
}

TEST(Rho, TinyRadiiStayFinite) {
  const RhoKernel kernel(2.0, 3.0, 1e-6);
  for (double r = 1e-300; r < 1.0; r *= 1e10) {
    const double v = kernel(r);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 0.0);
  }
}

}  // namespace
}  // namespace dualslope
