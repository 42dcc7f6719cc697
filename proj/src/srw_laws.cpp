#include "stein_hn/srw_laws.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <mpfr.h>

namespace stein_hn {

namespace {

// binom(n, j) for j = 0..n via B_{j+1} = B_j (n - j) / (j + 1).
std::vector<Integer> binomial_row(long n) {
  std::vector<Integer> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;
  for (long j = 0; j < n; ++j) {
    Integer next = row[j] * (n - j);
    mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(j + 1));
    row[j + 1] = std::move(next);
  }
  return row;
}

Integer power_of_two(long exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 2, static_cast<unsigned long>(exponent));
  return result;
}

Rational dyadic(const Integer& numerator, const Integer& denominator) {
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

void require_positive(long m, const char* what) {
  if (m < 1) throw std::domain_error(std::string(what) + ": parameter must be >= 1");
}

// 2^{-2m} binom(2m, m) = P(S_{2m} = 0).
Rational central_probability(long m) {
  Integer central;
  mpz_bin_uiui(central.get_mpz_t(), static_cast<unsigned long>(2 * m), static_cast<unsigned long>(m));
  return dyadic(central, power_of_two(2 * m));
}

// Compares an exact rational against a real number held in MPFR.
bool rational_le(const Rational& q, const mpfr_t bound) { return mpfr_cmp_q(bound, q.get_mpq_t()) >= 0; }

}  // namespace

ExactPMF::ExactPMF(Statistic statistic, long lower, std::vector<Rational> masses)
    : statistic_(statistic), lower_(lower), masses_(std::move(masses)) {
  if (masses_.empty()) throw std::invalid_argument("ExactPMF: empty support");
  Rational total = 0;
  for (const auto& q : masses_) {
    if (sgn(q) < 0) throw std::invalid_argument("ExactPMF: negative mass");
    total += q;
  }
  if (total != 1) throw std::invalid_argument("ExactPMF: masses sum to " + to_string(total));
}

Rational ExactPMF::mass(long k) const {
  if (k < lower_ || k > upper()) return Rational(0);
  return masses_[static_cast<std::size_t>(k - lower_)];
}

std::vector<Rational> ExactPMF::cumulative() const {
  std::vector<Rational> cdf(masses_.size());
  Rational running = 0;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    running += masses_[i];
    cdf[i] = running;
  }
  return cdf;
}

Rational position_prob(long n, long k) {
  if (n < 0) throw std::domain_error("position_prob: n must be >= 0");
  if ((n + k) % 2 != 0 || k > n || k < -n) return Rational(0);
  Integer count;
  mpz_bin_uiui(count.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>((n + k) / 2));
  return dyadic(count, power_of_two(n));
}

ExactPMF pmf_returns(long m) {
  require_positive(m, "pmf_returns");
  // P(K = r) = A_r / 2^{2m} with A_r = binom(2m - r, m) 2^r; the ratio
  // A_{r+1}/A_r = 2(m - r)/(2m - r) is 1 + psi(r).
  const Integer denominator = power_of_two(2 * m);
  std::vector<Rational> masses;
  masses.reserve(static_cast<std::size_t>(m) + 1);
  Integer a;
  mpz_bin_uiui(a.get_mpz_t(), static_cast<unsigned long>(2 * m), static_cast<unsigned long>(m));
  for (long r = 0; r <= m; ++r) {
    masses.push_back(dyadic(a, denominator));
    if (r < m) {
      a *= 2 * (m - r);
      mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(2 * m - r));
    }
  }
  return ExactPMF(Statistic::kReturns, 0, std::move(masses));
}

ExactPMF pmf_max(long n) {
  if (n < 2 || n % 2 != 0) throw std::domain_error("pmf_max: n must be even and >= 2");
  // p(r) = p_{n,r} + p_{n,r+1}; exactly one of the two is nonzero.
  const auto row = binomial_row(n);
  const Integer denominator = power_of_two(n);
  std::vector<Rational> masses;
  masses.reserve(static_cast<std::size_t>(n) + 1);
  for (long r = 0; r <= n; ++r) {
    masses.push_back(dyadic(row[static_cast<std::size_t>((n + r + 1) / 2)], denominator));
  }
  return ExactPMF(Statistic::kMax, 0, std::move(masses));
}

ExactPMF pmf_halfmax(long m) {
  require_positive(m, "pmf_halfmax");
  // q(0) = P(M = 0) = p_{n,0}; q(s) = P(M = 2s-1) + P(M = 2s) = 2 p_{n,2s}, s >= 1.
  const long n = 2 * m;
  const auto row = binomial_row(n);
  const Integer denominator = power_of_two(n);
  std::vector<Rational> masses;
  masses.reserve(static_cast<std::size_t>(m) + 1);
  masses.push_back(dyadic(row[static_cast<std::size_t>(m)], denominator));
  for (long s = 1; s <= m; ++s) {
    masses.push_back(dyadic(2 * row[static_cast<std::size_t>(m + s)], denominator));
  }
  return ExactPMF(Statistic::kHalfMax, 0, std::move(masses));
}

ExactPMF pmf_signchanges(long m) {
  require_positive(m, "pmf_signchanges");
  // p(s) = 2 p_{2m+1, 2s+1} = 2 binom(2m+1, m+s+1) 2^{-2m-1}.
  const long n = 2 * m + 1;
  const auto row = binomial_row(n);
  const Integer denominator = power_of_two(n);
  std::vector<Rational> masses;
  masses.reserve(static_cast<std::size_t>(m) + 1);
  for (long s = 0; s <= m; ++s) {
    masses.push_back(dyadic(2 * row[static_cast<std::size_t>(m + s + 1)], denominator));
  }
  return ExactPMF(Statistic::kSignChanges, 0, std::move(masses));
}

long parameter_for_length(Statistic statistic, long n) {
  if (statistic == Statistic::kSignChanges) {
    if (n < 3 || n % 2 != 1) throw std::domain_error("sign changes need odd n = 2m + 1 >= 3");
    return (n - 1) / 2;
  }
  if (n < 2 || n % 2 != 0) {
    throw std::domain_error(std::string(to_string(statistic)) + " needs even n = 2m >= 2");
  }
  return n / 2;
}

long length_for_parameter(Statistic statistic, long m) {
  require_positive(m, "length_for_parameter");
  return statistic == Statistic::kSignChanges ? 2 * m + 1 : 2 * m;
}

ExactPMF pmf_for_parameter(Statistic statistic, long m) {
  switch (statistic) {
    case Statistic::kReturns: return pmf_returns(m);
    case Statistic::kMax: return pmf_max(length_for_parameter(statistic, m));
    case Statistic::kHalfMax: return pmf_halfmax(m);
    case Statistic::kSignChanges: return pmf_signchanges(m);
  }
  throw std::invalid_argument("pmf_for_parameter: unknown statistic");
}

double scale_for_length(Statistic statistic, long n) {
  parameter_for_length(statistic, n);
  const double root = std::sqrt(static_cast<double>(n));
  switch (statistic) {
    case Statistic::kReturns:
    case Statistic::kMax: return 1.0 / root;
    case Statistic::kHalfMax:
    case Statistic::kSignChanges: return 2.0 / root;
  }
  throw std::invalid_argument("scale_for_length: unknown statistic");
}

ScaledLaw scaled_law(Statistic statistic, long n) {
  const long m = parameter_for_length(statistic, n);
  return ScaledLaw{pmf_for_parameter(statistic, m), scale_for_length(statistic, n)};
}

Rational mean_exact(const ExactPMF& pmf) {
  Rational mean = 0;
  for (long k = pmf.lower(); k <= pmf.upper(); ++k) mean += pmf.mass(k) * k;
  return mean;
}

MomentReport moment_bounds_check(long m) {
  require_positive(m, "moment_bounds_check");
  MomentReport report;
  report.m = m;
  report.mean_returns = mean_exact(pmf_returns(m));
  report.mean_halfmax = mean_exact(pmf_halfmax(m));
  report.mean_signchanges = mean_exact(pmf_signchanges(m));

  const Rational central = central_probability(m);
  report.returns_identity = report.mean_returns == Rational(2 * m + 1) * central - 1;
  report.halfmax_identity = report.mean_halfmax == Rational(m) * central;
  report.signchanges_identity =
      report.mean_signchanges == (Rational(2 * m + 1) * central - 1) / 2;

  // Bounds in MPFR, every operation rounded toward the safe side.
  mpfr_t pi_up, ratio, root, inv, bound;
  mpfr_inits2(128, pi_up, ratio, root, inv, bound, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi_up, MPFR_RNDU);

  // sqrt(m/pi), rounded down.
  mpfr_set_si(ratio, m, MPFR_RNDN);
  mpfr_div(ratio, ratio, pi_up, MPFR_RNDD);
  mpfr_sqrt(root, ratio, MPFR_RNDD);

  // E[K_n] <= sqrt(2/pi) sqrt(2m) = 2 sqrt(m/pi).
  mpfr_mul_ui(bound, root, 2, MPFR_RNDD);
  report.returns_ok = rational_le(report.mean_returns, bound);
  report.bound_returns = mpfr_get_d(bound, MPFR_RNDD);

  // E[N_n] <= sqrt(m/pi).
  report.halfmax_ok = rational_le(report.mean_halfmax, root);
  report.bound_halfmax = mpfr_get_d(root, MPFR_RNDD);

  // E[C] <= sqrt(m/pi) + 1/(2 sqrt(pi m)).
  mpfr_mul_si(inv, pi_up, m, MPFR_RNDU);
  mpfr_sqrt(inv, inv, MPFR_RNDU);
  mpfr_mul_ui(inv, inv, 2, MPFR_RNDU);
  mpfr_ui_div(inv, 1, inv, MPFR_RNDD);
  mpfr_add(bound, root, inv, MPFR_RNDD);
  report.signchanges_ok = rational_le(report.mean_signchanges, bound);
  report.bound_signchanges = mpfr_get_d(bound, MPFR_RNDD);

  mpfr_clears(pi_up, ratio, root, inv, bound, static_cast<mpfr_ptr>(nullptr));
  return report;
}

ExactPMF brute_force_pmf(Statistic statistic, int n) {
  if (n < 1) throw std::domain_error("brute_force_pmf: n must be >= 1");
  if (n > kBruteForceMaxLength) {
    throw std::invalid_argument("brute_force_pmf: refusing to enumerate 2^" + std::to_string(n) +
                                " paths (limit n <= 22)");
  }
  long upper = 0;
  switch (statistic) {
    case Statistic::kReturns: upper = n / 2; break;
    case Statistic::kMax: upper = n; break;
    case Statistic::kHalfMax: upper = (n + 1) / 2; break;
    case Statistic::kSignChanges: upper = (n - 1) / 2; break;
  }
  std::vector<unsigned long> counts(static_cast<std::size_t>(upper) + 1, 0);
  const std::uint64_t paths = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < paths; ++bits) {
    const WalkSummary walk = summarize_walk(std::span<const std::uint64_t>(&bits, 1), n);
    ++counts[static_cast<std::size_t>(statistic_value(walk, statistic))];
  }
  const Integer denominator = power_of_two(n);
  std::vector<Rational> masses;
  masses.reserve(counts.size());
  for (unsigned long c : counts) masses.push_back(dyadic(Integer(c), denominator));
  return ExactPMF(statistic, 0, std::move(masses));
}

}  // namespace stein_hn
