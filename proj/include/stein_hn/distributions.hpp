#pragma once

// Standard normal and half-normal evaluators.
//
// Everything here is a pure function of its arguments. Tail quantities are
// computed from the complementary error function so that 1 - Phi(x) keeps
// full relative accuracy for large x.

namespace stein_hn {

namespace normal {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934382;
inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811045;

/// Standard normal density.
double phi(double x);

/// Standard normal distribution function, via erfc.
double cap_phi(double x);

/// Upper tail 1 - Phi(x) without cancellation.
double cap_phi_upper(double x);

/// Quantile function. Throws std::domain_error unless 0 < p < 1.
double inv_cap_phi(double p);

/// Upper-tail quantile: the x with 1 - Phi(x) = q. Accurate for tiny q,
/// where inv_cap_phi(1 - q) would lose every digit to rounding of 1 - q.
double inv_cap_phi_upper(double q);

/// Mill's ratio (1 - Phi(x)) / phi(x), finite for every real x.
double mills_ratio(double x);

struct MillBounds {
  double lower;
  double upper;
};

/// The sandwich x/(1+x^2) phi(x) <= 1 - Phi(x) <= phi(x)/x for x > 0.
MillBounds mill_bounds(double x);

}  // namespace normal

// Law of |Z|. Density and distribution function vanish on (-inf, 0].
namespace half_normal {

/// E[Y] = sqrt(2/pi).
inline constexpr double kMean = 0.797884560802865355879892119868763;
/// Phi^{-1}(3/4), the median of Y.
inline constexpr double kMedian = 0.674489750196081743202227014541;

double pdf(double x);
double cdf(double x);
/// 1 - cdf(x), accurate in the tail.
double survival(double x);
/// p'(x)/p(x) = -x on [0, inf).
double log_derivative(double x);

}  // namespace half_normal

}  // namespace stein_hn
