#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "stein_hn/distances.hpp"
#include "stein_hn/distributions.hpp"
#include "stein_hn/quadrature.hpp"

using namespace stein_hn;

namespace {

ScaledLaw point_mass(double at) { return ScaledLaw{ExactPMF(Statistic::kReturns, 1, {Rational(1)}), at}; }

}  // namespace

TEST(Kolmogorov, SmallLaws) {
  EXPECT_NEAR(kolmogorov_exact(scaled_law(Statistic::kReturns, 2)), 0.5, 1e-16);
  // A point mass at 0 is at distance 1.
  const ScaledLaw origin{ExactPMF(Statistic::kReturns, 0, {Rational(1)}), 1.0};
  EXPECT_NEAR(kolmogorov_exact(origin), 1.0, 0.0);
}

TEST(Kolmogorov, AtLeastMassAtZero) {
  for (auto s : {Statistic::kReturns, Statistic::kMax, Statistic::kHalfMax}) {
    for (long n = 2; n <= 200; n += 6) {
      const ScaledLaw law = scaled_law(s, n);
      EXPECT_GE(kolmogorov_exact(law), to_double(law.base.mass(0))) << n;
    }
  }
  for (long n = 3; n <= 201; n += 6) {
    const ScaledLaw law = scaled_law(Statistic::kSignChanges, n);
    EXPECT_GE(kolmogorov_exact(law), to_double(law.base.mass(0))) << n;
  }
}

TEST(Wasserstein, PointMassAgainstQuadrature) {
  for (double c : {half_normal::kMean, 0.3, 2.0}) {
    const double at[] = {c};
    const auto r = quadrature::integrate([c](double y) { return std::abs(y - c) * half_normal::pdf(y); }, 0.0,
                                         40.0, at);
    EXPECT_NEAR(wasserstein_exact(point_mass(c)), r.value, 1e-12) << c;
    EXPECT_NEAR(wasserstein_quantile(point_mass(c), 64), r.value, 1e-10) << c;
  }
}

TEST(Wasserstein, TwoMethodsAgree) {
  const std::pair<Statistic, long> cases[] = {{Statistic::kReturns, 2},     {Statistic::kMax, 4},
                                              {Statistic::kSignChanges, 5}, {Statistic::kHalfMax, 64},
                                              {Statistic::kReturns, 300},  {Statistic::kSignChanges, 301}};
  for (const auto& [s, n] : cases) {
    const ScaledLaw law = scaled_law(s, n);
    EXPECT_NEAR(wasserstein_exact(law), wasserstein_quantile(law, 64), 1e-10) << to_string(s) << " " << n;
  }
  EXPECT_THROW(wasserstein_quantile(scaled_law(Statistic::kReturns, 2), 63), std::invalid_argument);
}

TEST(Wasserstein, DenseLatticeApproachesZero) {
  // Y discretized at spacing 1/k (mass of [j/k, (j+1)/k) at j/k) is within 1/k.
  double previous = 1.0;
  for (long k : {4L, 16L, 64L}) {
    std::vector<Rational> masses;
    Rational used = 0;
    for (long j = 0; j < 12 * k; ++j) {
      const double a = static_cast<double>(j) / k;
      const double b = static_cast<double>(j + 1) / k;
      // Exact differences of doubles telescope, so the masses sum to cdf(12) <= 1.
      const Rational q = Rational(half_normal::cdf(b)) - Rational(half_normal::cdf(a));
      masses.push_back(q);
      used += q;
    }
    masses.push_back(Rational(1) - used);
    const ScaledLaw law{ExactPMF(Statistic::kReturns, 0, masses), 1.0 / static_cast<double>(k)};
    const double d = wasserstein_exact(law);
    EXPECT_LT(d, 1.0 / static_cast<double>(k));
    EXPECT_LT(d, previous);
    previous = d;
  }
}

TEST(Bounds, ReferenceValues) {
  EXPECT_NEAR(theorem_bound(Statistic::kMax, 100, Metric::kWasserstein), (3.0 + 2.0 / std::numbers::pi) / 10.0,
              1e-15);
  EXPECT_NEAR(theorem_bound(Statistic::kMax, 100, Metric::kWasserstein), 0.36366, 1e-5);
  EXPECT_NEAR(theorem_bound(Statistic::kReturns, 100, Metric::kKolmogorov), 0.3225206, 1e-7);
  EXPECT_THROW(theorem_bound(Statistic::kSignChanges, 100, Metric::kKolmogorov), std::domain_error);
  EXPECT_THROW(theorem_bound(Statistic::kReturns, 101, Metric::kKolmogorov), std::domain_error);
  EXPECT_NEAR(theorem_bound(Statistic::kHalfMax, 64, Metric::kKolmogorov),
              lemma_vy_bound(64, Metric::kKolmogorov), 0.0);
  EXPECT_NEAR(lemma_vw_bound(2, Metric::kKolmogorov), 1.0 / std::sqrt(std::numbers::pi), 1e-15);
}

TEST(Bounds, SmallCasesPass) {
  const auto r = bound_check(Statistic::kReturns, 2);
  EXPECT_NEAR(r.kolmogorov, 0.5, 1e-16);
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.margin_K, r.bound_K - r.kolmogorov, 0.0);
  EXPECT_TRUE(bound_check(Statistic::kMax, 2).passed());
  EXPECT_TRUE(bound_check(Statistic::kSignChanges, 3).passed());
}

TEST(Bounds, SweepKeepsOrder) {
  const std::vector<long> ns{40, 2, 18};
  const auto reports = bound_sweep(Statistic::kMax, ns);
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports[0].n, 40);
  EXPECT_EQ(reports[1].n, 2);
  const std::vector<long> odd{3};
  EXPECT_THROW(bound_sweep(Statistic::kMax, odd), std::domain_error);
}

TEST(Rates, ReturnsAt4096) {
  const std::vector<long> ns{4096};
  const auto rows = rate_table(Statistic::kReturns, ns);
  EXPECT_NEAR(rows[0].sqrtn_mass_at_zero, half_normal::kMean, 5e-4);
  EXPECT_NEAR(rows[0].sqrtn_mean_gap, 1.0, 0.02);
  EXPECT_THROW(rate_table(Statistic::kReturns, std::vector<long>{}), std::invalid_argument);
}

TEST(Rates, NormalizedKolmogorovStaysBounded) {
  std::vector<long> ns;
  for (long n = 64; n <= 4096; n *= 2) ns.push_back(n);
  for (const auto& row : rate_table(Statistic::kReturns, ns)) {
    EXPECT_GT(row.sqrtn_K, 0.5);
    EXPECT_LT(row.sqrtn_K, theorem_bound(Statistic::kReturns, row.n, Metric::kKolmogorov) * std::sqrt(row.n));
  }
}

TEST(Auxiliary, SmallestCase) {
  const auto r = auxiliary_bounds(1);
  EXPECT_EQ(r.kolmogorov_VW, Rational(1, 4));
  EXPECT_TRUE(r.all_passed());
}

TEST(Auxiliary, LatticeDistancesAreScaleFree) {
  const auto d = lattice_distances(doubled_halfmax(5), pmf_max(10));
  // Agreement at even points: the sup sits at odd points, where it is P(M = 2k + 1).
  Rational best = 0;
  for (long k = 0; 2 * k + 1 <= 10; ++k) best = std::max(best, pmf_max(10).mass(2 * k + 1));
  EXPECT_EQ(d.kolmogorov, best);
  for (long m = 1; m <= 64; ++m) EXPECT_TRUE(auxiliary_bounds(m).all_passed()) << m;
}
