#pragma once

#include <functional>
#include <span>
#include <vector>

namespace stein_hn::quadrature {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod on [a, b]. `tolerance` is relative to the L1 norm
/// of the integrand. Breakpoints strictly inside (a, b) split the range so
/// that kinks of the integrand sit on panel boundaries.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints = {}, double tolerance = 1e-12);

/// Gauss-Legendre rule of the given order on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int order);

/// Fixed-order Gauss-Legendre over [a, b].
double integrate_fixed(const GaussLegendreRule& rule, const std::function<double(double)>& f,
                       double a, double b);

}  // namespace stein_hn::quadrature
