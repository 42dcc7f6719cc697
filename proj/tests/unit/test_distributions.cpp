#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "stein_hn/distributions.hpp"
#include "stein_hn/quadrature.hpp"

using namespace stein_hn;

TEST(Normal, ReferenceValues) {
  EXPECT_NEAR(normal::phi(1.0), 0.24197072451914337, 1e-16);
  EXPECT_NEAR(normal::phi(0.0), normal::kInvSqrt2Pi, 1e-17);
  EXPECT_NEAR(normal::cap_phi(5.0), 0.9999997133484281, 1e-15);
  EXPECT_NEAR(normal::cap_phi(0.0), 0.5, 0.0);
  EXPECT_NEAR(normal::inv_cap_phi(0.75), 0.6744897501960817, 1e-15);
  EXPECT_NEAR(normal::inv_cap_phi(0.5), 0.0, 1e-16);
}

TEST(Normal, UpperTailKeepsRelativeAccuracy) {
  // 1 - Phi(10) = 7.61985302416e-24.
  EXPECT_NEAR(normal::cap_phi_upper(10.0) / 7.619853024160526e-24, 1.0, 1e-13);
  EXPECT_NEAR(normal::cap_phi_upper(-3.0), normal::cap_phi(3.0), 1e-16);
}

TEST(Normal, QuantileRoundTrip) {
  // Direct round trip where 1 - p is not swamped by the rounding of p.
  for (double x = -8.0; x <= 3.0; x += 0.01) {
    EXPECT_NEAR(normal::inv_cap_phi(normal::cap_phi(x)), x, 1e-12) << x;
  }
  // The upper tail goes through the survival function instead.
  for (double x = 0.0; x <= 30.0; x += 0.05) {
    EXPECT_NEAR(normal::inv_cap_phi_upper(normal::cap_phi_upper(x)), x, 1e-12) << x;
  }
}

TEST(Normal, QuantileDomain) {
  EXPECT_THROW(normal::inv_cap_phi(0.0), std::domain_error);
  EXPECT_THROW(normal::inv_cap_phi(1.0), std::domain_error);
  EXPECT_THROW(normal::inv_cap_phi(-0.1), std::domain_error);
  EXPECT_THROW(normal::inv_cap_phi(std::nan("")), std::domain_error);
  EXPECT_THROW(normal::inv_cap_phi_upper(0.0), std::domain_error);
}

TEST(Normal, MillsRatioAndSandwich) {
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0}) {
    const double r = normal::mills_ratio(x);
    EXPECT_NEAR(r, normal::cap_phi_upper(x) / normal::phi(x), 1e-13 * r);
    const auto b = normal::mill_bounds(x);
    const double tail = normal::cap_phi_upper(x);
    EXPECT_LE(b.lower, tail);
    EXPECT_GE(b.upper, tail);
  }
  // Far tail: R(x) ~ 1/x - 1/x^3.
  const double x = 100.0;
  EXPECT_NEAR(normal::mills_ratio(x), 1.0 / x - 1.0 / (x * x * x) + 3.0 / std::pow(x, 5), 1e-12);
  EXPECT_NEAR(normal::mills_ratio(0.0), std::sqrt(std::numbers::pi / 2.0), 1e-15);
  EXPECT_THROW(normal::mill_bounds(0.0), std::domain_error);
}

TEST(HalfNormal, DensityAndDistribution) {
  EXPECT_EQ(half_normal::pdf(-1.0), 0.0);
  EXPECT_EQ(half_normal::cdf(-1.0), 0.0);
  EXPECT_NEAR(half_normal::pdf(1.0), 2.0 * normal::phi(1.0), 1e-16);
  EXPECT_NEAR(half_normal::cdf(half_normal::kMedian), 0.5, 1e-15);
  EXPECT_NEAR(half_normal::cdf(1.5) + half_normal::survival(1.5), 1.0, 1e-15);
  EXPECT_EQ(half_normal::log_derivative(2.5), -2.5);
}

TEST(HalfNormal, MeanByQuadrature) {
  const auto r = quadrature::integrate([](double y) { return y * half_normal::pdf(y); }, 0.0, 40.0);
  EXPECT_NEAR(r.value, half_normal::kMean, 1e-14);
  EXPECT_NEAR(half_normal::kMean, std::sqrt(2.0 / std::numbers::pi), 1e-16);
}
