#include "stein_hn/distributions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stein_hn {

namespace normal {

namespace {

constexpr double kInvSqrt2 = 0.707106781186547524400844362104849;

// Rational approximation of the lower-tail quantile (Acklam), relative
// error about 1.2e-9 before refinement.
double quantile_seed(double p) {
  constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
  constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
  constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
  constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Lower-tail quantile for p <= 1/2; Halley polish keeps relative accuracy
// because Phi(x) for x <= 0 is evaluated without cancellation.
double lower_quantile(double p) {
  double x = quantile_seed(p);
  for (int i = 0; i < 2; ++i) {
    const double e = cap_phi(x) - p;
    const double u = e / phi(x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

// Continued fraction for the Mill's ratio, used where phi underflows.
double mills_ratio_cf(double x) {
  // R(x) = 1/(x+ 1/(x+ 2/(x+ 3/(x+ ...)))), evaluated bottom-up.
  double tail = x;
  for (int k = 60; k >= 1; --k) {
    tail = x + k / tail;
  }
  return 1.0 / tail;
}

}  // namespace

double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double cap_phi(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double cap_phi_upper(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double inv_cap_phi(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("inv_cap_phi: probability must lie in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  if (p < 0.5) return lower_quantile(p);
  return -lower_quantile(1.0 - p);
}

double inv_cap_phi_upper(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("inv_cap_phi_upper: tail probability must lie in (0, 1)");
  }
  if (q == 0.5) return 0.0;
  if (q < 0.5) return -lower_quantile(q);
  return lower_quantile(1.0 - q);
}

double mills_ratio(double x) {
  if (x > 30.0) return mills_ratio_cf(x);
  return cap_phi_upper(x) / phi(x);
}

MillBounds mill_bounds(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("mill_bounds: x must be positive and finite");
  }
  const double density = phi(x);
  return {x / (1.0 + x * x) * density, density / x};
}

}  // namespace normal

namespace half_normal {

double pdf(double x) { return x > 0.0 ? 2.0 * normal::phi(x) : 0.0; }

double cdf(double x) {
  if (x <= 0.0) return 0.0;
  return std::erf(x * 0.707106781186547524400844362104849);
}

double survival(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(x * 0.707106781186547524400844362104849);
}

double log_derivative(double x) { return -x; }

}  // namespace half_normal

}  // namespace stein_hn
