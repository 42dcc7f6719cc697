#include "stein_hn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace stein_hn::quadrature {

namespace {
// Below a relative tolerance of about 1e-13 the Kronrod error estimate is
// dominated by rounding and bisection never terminates on its own; the depth
// cap bounds the work at 2^12 panels.
constexpr unsigned kMaxDepth = 12;
}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, double tolerance) {
  if (!(a <= b)) {
    throw std::invalid_argument("integrate: lower limit exceeds upper limit");
  }
  std::vector<double> cuts{a};
  for (double c : breakpoints) {
    if (c > a && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  Result total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] == cuts[i]) continue;
    double error = 0.0;
    const double piece = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, cuts[i], cuts[i + 1], kMaxDepth, tolerance, &error);
    total.value += piece;
    total.error_estimate += error;
  }
  return total;
}

GaussLegendreRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / derivative;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

double integrate_fixed(const GaussLegendreRule& rule, const std::function<double(double)>& f,
                       double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

}  // namespace stein_hn::quadrature
