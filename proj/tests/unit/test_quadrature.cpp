#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "stein_hn/quadrature.hpp"

using namespace stein_hn;

TEST(GaussLegendre, WeightsSumToTwo) {
  for (int order : {1, 2, 5, 16, 64, 128}) {
    const auto rule = quadrature::gauss_legendre(order);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(order));
    EXPECT_NEAR(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), 2.0, 1e-13);
  }
  EXPECT_THROW(quadrature::gauss_legendre(0), std::invalid_argument);
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  const int order = 8;
  const auto rule = quadrature::gauss_legendre(order);
  for (int degree = 0; degree <= 2 * order - 1; ++degree) {
    const double value = quadrature::integrate_fixed(rule, [degree](double x) { return std::pow(x, degree); }, 0.0, 1.0);
    EXPECT_NEAR(value, 1.0 / (degree + 1), 1e-14) << degree;
  }
}

TEST(Adaptive, SmoothAndKinked) {
  EXPECT_NEAR(quadrature::integrate([](double x) { return std::exp(x); }, 0.0, 1.0).value, std::expm1(1.0), 1e-14);
  const double kink[] = {0.3};
  const auto r = quadrature::integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, kink);
  EXPECT_NEAR(r.value, 0.5 * (0.09 + 0.49), 1e-15);
  EXPECT_THROW(quadrature::integrate([](double x) { return x; }, 1.0, 0.0), std::invalid_argument);
}

TEST(Adaptive, ShortIntervalsTerminateQuickly) {
  long calls = 0;
  auto f = [&calls](double t) {
    ++calls;
    return (t - 0.8) * std::exp(0.5 * (0.005 - t) * (0.005 + t));
  };
  quadrature::integrate(f, 0.0, 0.0048636410384264722);
  EXPECT_LT(calls, 200000);
}
