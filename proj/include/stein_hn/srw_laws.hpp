#pragma once

// Exact laws of the random-walk statistics in walk.hpp, as rational mass
// functions on finite integer intervals.

#include <span>
#include <vector>

#include "stein_hn/rational.hpp"
#include "stein_hn/walk.hpp"

namespace stein_hn {

class ExactPMF {
 public:
  /// Masses for k = lower, lower + 1, ... Throws std::invalid_argument if a
  /// mass is negative or the masses do not sum to exactly 1.
  ExactPMF(Statistic statistic, long lower, std::vector<Rational> masses);

  Statistic statistic() const { return statistic_; }
  long lower() const { return lower_; }
  long upper() const { return lower_ + static_cast<long>(masses_.size()) - 1; }
  std::size_t size() const { return masses_.size(); }

  /// Mass at k; zero outside [lower, upper].
  Rational mass(long k) const;
  const std::vector<Rational>& masses() const { return masses_; }

  /// F(k) = P(X <= k) for k = lower..upper.
  std::vector<Rational> cumulative() const;

  friend bool operator==(const ExactPMF& a, const ExactPMF& b) {
    return a.statistic_ == b.statistic_ && a.lower_ == b.lower_ && a.masses_ == b.masses_;
  }

 private:
  Statistic statistic_;
  long lower_;
  std::vector<Rational> masses_;
};

/// A lattice law with atoms at scale * k.
struct ScaledLaw {
  ExactPMF base;
  double scale = 1.0;

  double atom(long k) const { return scale * static_cast<double>(k); }
};

/// P(S_n = k) = binom(n, (n+k)/2) 2^{-n}, zero unless (n+k)/2 is an integer
/// in [0, n].
Rational position_prob(long n, long k);

/// Law of K_{2m} on [0, m].
ExactPMF pmf_returns(long m);
/// Law of M_n on [0, n], n even.
ExactPMF pmf_max(long n);
/// Law of N_{2m} on [0, m].
ExactPMF pmf_halfmax(long m);
/// Law of C_{2m+1} on [0, m].
ExactPMF pmf_signchanges(long m);

/// Walk parameter m for a walk of length n: n = 2m, or n = 2m + 1 for sign
/// changes. Throws std::domain_error on a parity mismatch or n too small.
long parameter_for_length(Statistic statistic, long n);
long length_for_parameter(Statistic statistic, long m);

/// The pmf for parameter m (for max, the walk length 2m).
ExactPMF pmf_for_parameter(Statistic statistic, long m);

/// The normalized law compared with the half-normal: K_n/sqrt(n), M_n/sqrt(n),
/// 2 N_n/sqrt(n), 2 C_n/sqrt(n).
ScaledLaw scaled_law(Statistic statistic, long n);
double scale_for_length(Statistic statistic, long n);

Rational mean_exact(const ExactPMF& pmf);

struct MomentReport {
  long m = 0;
  Rational mean_returns;
  Rational mean_halfmax;
  Rational mean_signchanges;
  // Real right-hand sides, rounded toward zero so the comparison is safe.
  double bound_returns = 0.0;
  double bound_halfmax = 0.0;
  double bound_signchanges = 0.0;
  bool returns_ok = false;
  bool halfmax_ok = false;
  bool signchanges_ok = false;
  // Closed-form mean identities derived from the Stein characterizations.
  bool returns_identity = false;
  bool halfmax_identity = false;
  bool signchanges_identity = false;

  bool all_passed() const {
    return returns_ok && halfmax_ok && signchanges_ok && returns_identity && halfmax_identity &&
           signchanges_identity;
  }
};

/// E[K_n] <= sqrt(2/pi) sqrt(n), E[N_n] <= sqrt(m/pi) (that is, E[V] <= sqrt(2/pi)),
/// E[C_{2m+1}] <= sqrt(m/pi) + 1/(2 sqrt(pi m)), each rational mean compared
/// against a bound rounded down at 128 bits.
MomentReport moment_bounds_check(long m);

inline constexpr int kBruteForceMaxLength = 22;

/// Law of the statistic by enumerating all 2^n paths. Refuses n > 22.
ExactPMF brute_force_pmf(Statistic statistic, int n);

}  // namespace stein_hn
