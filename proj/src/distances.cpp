#include "stein_hn/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <mpfr.h>

#include "stein_hn/distributions.hpp"
#include "stein_hn/parallel.hpp"
#include "stein_hn/quadrature.hpp"

namespace stein_hn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2OverPi = half_normal::kMean;

// P(X > k) for k = lower..upper, exact and rounded once each.
std::vector<double> survivals(const ExactPMF& pmf) {
  std::vector<double> out(pmf.size());
  Rational tail = 0;
  for (std::size_t i = pmf.size(); i-- > 0;) {
    out[i] = to_double(tail);
    tail += pmf.masses()[i];
  }
  return out;
}

// Integral of the half-normal survival T over [a, b]; G(x) = 2 phi(x) - x T(x)
// is an antiderivative of -T.
double tail_integral(double a, double b) {
  auto g = [](double x) {
    return std::isinf(x) ? 0.0 : 2.0 * normal::phi(x) - x * half_normal::survival(x);
  };
  return g(a) - g(b);
}

// Integral over [a, b] of |T(t) - s| with T decreasing.
double interval_gap(double a, double b, double s) {
  if (b <= a) return 0.0;
  // Below the smallest normal double the s (b - a) term is invisible.
  if (s < std::numeric_limits<double>::min()) return tail_integral(a, b);
  if (s >= 1.0) return s * (b - a) - tail_integral(a, b);
  const double crossing = normal::inv_cap_phi_upper(0.5 * s);
  if (crossing <= a) return s * (b - a) - tail_integral(a, b);
  if (crossing >= b) return tail_integral(a, b) - s * (b - a);
  return (tail_integral(a, crossing) - s * (crossing - a)) +
         (s * (b - crossing) - tail_integral(crossing, b));
}

// True iff q <= sqrt(r / n) with r = 2/pi: decided as q^2 n pi <= 2 using pi
// rounded up.
bool rational_le_sqrt_two_over_pi_n(const Rational& q, long n) {
  Rational lhs = q * q * n / 2;
  mpfr_t pi_up;
  mpfr_init2(pi_up, 128);
  mpfr_const_pi(pi_up, MPFR_RNDU);
  mpfr_mul_q(pi_up, pi_up, lhs.get_mpq_t(), MPFR_RNDU);
  const bool ok = mpfr_cmp_ui(pi_up, 1) <= 0;
  mpfr_clear(pi_up);
  return ok;
}

void require_length(Statistic statistic, long n) { parameter_for_length(statistic, n); }

}  // namespace

double kolmogorov_exact(const ScaledLaw& law) {
  const ExactPMF& pmf = law.base;
  const auto tail = survivals(pmf);
  const auto cdf = pmf.cumulative();
  // Compare on whichever side of the median keeps full relative precision:
  // distribution functions below it, survival functions above.
  double previous_cdf = 0.0;
  double previous_tail = 1.0;
  double sup = 0.0;
  for (long k = pmf.lower(); k <= pmf.upper(); ++k) {
    const std::size_t i = static_cast<std::size_t>(k - pmf.lower());
    const double x = law.atom(k);
    const double f_k = to_double(cdf[i]);
    if (x <= half_normal::kMedian) {
      const double f = half_normal::cdf(x);
      sup = std::max({sup, std::abs(f - f_k), std::abs(f - previous_cdf)});
    } else {
      const double t = half_normal::survival(x);
      sup = std::max({sup, std::abs(t - tail[i]), std::abs(t - previous_tail)});
    }
    previous_cdf = f_k;
    previous_tail = tail[i];
  }
  return sup;
}

double wasserstein_exact(const ScaledLaw& law) {
  const ExactPMF& pmf = law.base;
  const auto tail = survivals(pmf);
  double total = 0.0;
  // Below the first atom the law has survival 1.
  if (law.atom(pmf.lower()) > 0.0) total += interval_gap(0.0, law.atom(pmf.lower()), 1.0);
  for (long k = pmf.lower(); k < pmf.upper(); ++k) {
    const std::size_t i = static_cast<std::size_t>(k - pmf.lower());
    total += interval_gap(law.atom(k), law.atom(k + 1), tail[i]);
  }
  total += tail_integral(law.atom(pmf.upper()), INFINITY);
  return total;
}

double wasserstein_quantile(const ScaledLaw& law, int nodes) {
  if (nodes < 64) throw std::invalid_argument("wasserstein_quantile: nodes must be >= 64");
  const auto rule = quadrature::gauss_legendre(nodes);
  const ExactPMF& pmf = law.base;
  const auto tail = survivals(pmf);
  // With v = 1 - u, Q_Y = upper quantile of v/2 and Q_law = x_k on
  // v in [S_k, S_{k-1}]. The substitution v = exp(-s) spreads the tail.
  constexpr double kTruncation = 45.0;
  double total = 0.0;
  double s_lo = 0.0;
  for (long k = pmf.lower(); k <= pmf.upper(); ++k) {
    const std::size_t i = static_cast<std::size_t>(k - pmf.lower());
    const double x = law.atom(k);
    // Beyond s = 45 the remaining mass is below 3e-20.
    const bool last = k == pmf.upper() || tail[i] <= 0.0 || -std::log(tail[i]) >= kTruncation;
    const double s_hi = last ? kTruncation : -std::log(tail[i]);
    if (s_hi > s_lo) {
      auto integrand = [x](double s) {
        const double v = std::exp(-s);
        return std::abs(x - normal::inv_cap_phi_upper(0.5 * v)) * v;
      };
      std::vector<double> cuts{s_lo};
      const double t = half_normal::survival(x);
      if (t > 0.0) {
        const double kink = -std::log(t);
        if (kink > s_lo && kink < s_hi) cuts.push_back(kink);
      }
      cuts.push_back(s_hi);
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double width = cuts[c + 1] - cuts[c];
        const int pieces = std::max(1, static_cast<int>(std::ceil(width)));
        for (int p = 0; p < pieces; ++p) {
          const double a = cuts[c] + width * p / pieces;
          const double b = cuts[c] + width * (p + 1) / pieces;
          total += quadrature::integrate_fixed(rule, integrand, a, b);
        }
      }
    }
    if (last) break;
    s_lo = s_hi;
  }
  return total;
}

std::string_view to_string(Metric metric) {
  return metric == Metric::kKolmogorov ? "K" : "W";
}

std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "K" || name == "kolmogorov") return Metric::kKolmogorov;
  if (name == "W" || name == "wasserstein") return Metric::kWasserstein;
  return std::nullopt;
}

double lemma_vw_bound(long n, Metric metric) {
  if (n < 2 || n % 2 != 0) throw std::domain_error("lemma_vw_bound: n must be even and >= 2");
  const double root = std::sqrt(static_cast<double>(n));
  return metric == Metric::kWasserstein ? 1.0 / root : kSqrt2OverPi / root;
}

double lemma_vy_bound(long n, Metric metric) {
  if (n < 2 || n % 2 != 0) throw std::domain_error("lemma_vy_bound: n must be even and >= 2");
  const double nn = static_cast<double>(n);
  const double root = std::sqrt(nn);
  if (metric == Metric::kWasserstein) return (2.0 + 4.0 / kPi) / root + 2.0 * kSqrt2OverPi / nn;
  return (3.0 * kSqrt2OverPi + 0.5) / root + 2.0 / nn;
}

double theorem_bound(Statistic statistic, long n, Metric metric) {
  require_length(statistic, n);
  const double nn = static_cast<double>(n);
  const double root = std::sqrt(nn);
  const bool w = metric == Metric::kWasserstein;
  switch (statistic) {
    case Statistic::kMax:
      return w ? (3.0 + 2.0 / kPi) / root
               : (4.0 * kSqrt2OverPi + 0.5) / root + 2.0 / nn;
    case Statistic::kReturns:
      return w ? (2.0 / kPi + 2.0) / root + kSqrt2OverPi / nn
               : ((3.0 + 2.0 * std::numbers::sqrt2) / std::sqrt(2.0 * kPi) + 0.75) / root +
                     1.5 / nn;
    case Statistic::kSignChanges:
      return w ? (4.0 + 2.0 / kPi) / root + kSqrt2OverPi / nn +
                     (2.0 * std::numbers::sqrt2 / kPi) / (nn * root)
               : ((2.0 * std::numbers::sqrt2 + 4.0) / std::sqrt(kPi) + 1.5) / root + 3.0 / nn +
                     (4.0 / std::sqrt(kPi)) / (nn * root);
    case Statistic::kHalfMax: return lemma_vy_bound(n, metric);
  }
  throw std::invalid_argument("theorem_bound: unknown statistic");
}

DistanceReport bound_check(Statistic statistic, long n) {
  const ScaledLaw law = scaled_law(statistic, n);
  DistanceReport report;
  report.statistic = statistic;
  report.n = n;
  report.kolmogorov = kolmogorov_exact(law);
  report.wasserstein = wasserstein_exact(law);
  report.bound_K = theorem_bound(statistic, n, Metric::kKolmogorov);
  report.bound_W = theorem_bound(statistic, n, Metric::kWasserstein);
  report.margin_K = report.bound_K - report.kolmogorov;
  report.margin_W = report.bound_W - report.wasserstein;
  const double root = std::sqrt(static_cast<double>(n));
  report.sqrtn_K = root * report.kolmogorov;
  report.sqrtn_W = root * report.wasserstein;
  return report;
}

std::vector<DistanceReport> bound_sweep(Statistic statistic, std::span<const long> ns) {
  for (long n : ns) require_length(statistic, n);
  std::vector<DistanceReport> reports(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) { reports[i] = bound_check(statistic, ns[i]); });
  return reports;
}

std::vector<RateRow> rate_table(Statistic statistic, std::span<const long> ns) {
  if (ns.empty()) throw std::invalid_argument("rate_table: empty list of n");
  for (long n : ns) require_length(statistic, n);
  std::vector<RateRow> rows(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const long n = ns[i];
    const ScaledLaw law = scaled_law(statistic, n);
    const double root = std::sqrt(static_cast<double>(n));
    RateRow& row = rows[i];
    row.n = n;
    row.sqrtn_K = root * kolmogorov_exact(law);
    row.sqrtn_W = root * wasserstein_exact(law);
    row.sqrtn_mass_at_zero = root * to_double(law.base.mass(0));
    const double mean = law.scale * to_double(mean_exact(law.base));
    row.sqrtn_mean_gap = root * std::abs(mean - half_normal::kMean);
  });
  return rows;
}

LatticeDistances lattice_distances(const ExactPMF& a, const ExactPMF& b) {
  const long lo = std::min(a.lower(), b.lower());
  const long hi = std::max(a.upper(), b.upper());
  LatticeDistances out{Rational(0), Rational(0)};
  Rational fa = 0;
  Rational fb = 0;
  for (long k = lo; k < hi; ++k) {
    fa += a.mass(k);
    fb += b.mass(k);
    Rational gap = abs(fa - fb);
    if (gap > out.kolmogorov) out.kolmogorov = gap;
    out.l1 += gap;
  }
  return out;
}

ExactPMF doubled_halfmax(long m) {
  const ExactPMF half = pmf_halfmax(m);
  std::vector<Rational> masses(static_cast<std::size_t>(2 * m) + 1);
  for (long s = 0; s <= m; ++s) masses[static_cast<std::size_t>(2 * s)] = half.mass(s);
  return ExactPMF(Statistic::kHalfMax, 0, std::move(masses));
}

AuxiliaryReport auxiliary_bounds(long m) {
  if (m < 1) throw std::domain_error("auxiliary_bounds: m must be >= 1");
  const long n = 2 * m;
  const double root = std::sqrt(static_cast<double>(n));
  AuxiliaryReport report;
  report.m = m;
  report.n = n;

  const ExactPMF v = doubled_halfmax(m);
  const ExactPMF w = pmf_max(n);
  const LatticeDistances vw = lattice_distances(v, w);
  report.kolmogorov_VW = vw.kolmogorov;
  report.l1_VW = vw.l1;
  report.d_K_VW = to_double(vw.kolmogorov);
  report.d_W_VW = to_double(vw.l1) / root;
  report.bound_K_VW = lemma_vw_bound(n, Metric::kKolmogorov);
  report.bound_W_VW = lemma_vw_bound(n, Metric::kWasserstein);
  // d_W(V, W) = l1 / sqrt(n) <= 1/sqrt(n) iff l1 <= 1.
  report.vw_W_ok = vw.l1 <= 1;
  report.vw_K_ok = rational_le_sqrt_two_over_pi_n(vw.kolmogorov, n);

  const ScaledLaw v_law = scaled_law(Statistic::kHalfMax, n);
  const ScaledLaw w_law = scaled_law(Statistic::kMax, n);
  report.d_K_VY = kolmogorov_exact(v_law);
  report.d_W_VY = wasserstein_exact(v_law);
  report.d_K_WY = kolmogorov_exact(w_law);
  report.d_W_WY = wasserstein_exact(w_law);
  report.bound_K_VY = lemma_vy_bound(n, Metric::kKolmogorov);
  report.bound_W_VY = lemma_vy_bound(n, Metric::kWasserstein);
  report.vy_K_ok = report.d_K_VY <= report.bound_K_VY;
  report.vy_W_ok = report.d_W_VY <= report.bound_W_VY;

  // The three distances are computed separately; allow for their rounding.
  constexpr double kSlack = 1e-12;
  report.triangle_K_ok = report.d_K_WY <= report.d_K_VW + report.d_K_VY + kSlack;
  report.triangle_W_ok = report.d_W_WY <= report.d_W_VW + report.d_W_VY + kSlack;

  const auto fv = v.cumulative();
  const auto fw = w.cumulative();
  report.even_points_agree = true;
  for (long k = 0; 2 * k <= n; ++k) {
    if (fv[static_cast<std::size_t>(2 * k)] != fw[static_cast<std::size_t>(2 * k)]) {
      report.even_points_agree = false;
      break;
    }
  }
  return report;
}

}  // namespace stein_hn
