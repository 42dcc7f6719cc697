#pragma once

// Discrete Stein characterizations of a pmf p supported on [a, b]:
//
//     E[ c(X-1) Dg(X-1) + gamma(X) g(X) ] = 0   for all g with g(a-1) = 0,
//
// with psi(k) = Dp(k)/p(k), gamma(k) = c(k) psi(k) + Dc(k-1) and D the
// forward difference. All arithmetic is exact.

#include <functional>
#include <optional>
#include <variant>
#include <string>
#include <vector>

#include "stein_hn/rational.hpp"
#include "stein_hn/srw_laws.hpp"

namespace stein_hn {

/// A function on the integers vanishing at a - 1 (checked where used).
struct TestSequence {
  std::function<Rational(long)> g;

  Rational operator()(long k) const { return g(k); }
};

/// g = 1{k >= j}.
TestSequence indicator_from(long j);

Rational forward_diff(const TestSequence& g, long k);

/// The (c, gamma) pair on [lower, upper] without reference to a pmf.
struct SteinOperator {
  long lower = 0;
  long upper = 0;
  /// c(k) for k = lower - 1 .. upper.
  std::vector<Rational> c;
  /// gamma(k) for k = lower .. upper.
  std::vector<Rational> gamma;

  const Rational& c_at(long k) const { return c[static_cast<std::size_t>(k - lower + 1)]; }
  const Rational& gamma_at(long k) const { return gamma[static_cast<std::size_t>(k - lower)]; }
};

struct CharacterizationSpec {
  ExactPMF pmf;
  SteinOperator op;
  /// psi(k) = (p(k+1) - p(k))/p(k) for k = lower .. upper.
  std::vector<Rational> psi;

  const Rational& psi_at(long k) const { return psi[static_cast<std::size_t>(k - op.lower)]; }
};

/// The characterization of each statistic's law with parameter m:
///   returns      c(r) = 2m - r,     gamma(r) = -(r + 1)
///   halfmax/max  c(s) = m + s + 1,  gamma(0) = m, gamma(s) = -2s for s >= 1
///   signchanges  c(s) = m + s + 2,  gamma(s) = -(2s + 1)
/// gamma is the closed form; psi is derived from the pmf. For max the
/// characterization is that of N_n = floor((M_n + 1)/2).
CharacterizationSpec make_spec(Statistic statistic, long m);

/// c(k) psi(k) + Dc(k-1) for k in [lower, upper], from c and the pmf.
std::vector<Rational> derived_gamma(const ExactPMF& pmf, const std::vector<Rational>& c);

/// E[c(X-1) Dg(X-1) + gamma(X) g(X)] under `law`. Throws
/// std::invalid_argument if g(a - 1) != 0.
Rational stein_residual(const SteinOperator& op, const ExactPMF& law, const TestSequence& g);
Rational stein_residual(const CharacterizationSpec& spec, const TestSequence& g);

struct RecoveryError {
  std::string reason;
};

/// Solves the identity over the basis 1{k >= j}, j = lower..upper, for the
/// unique normalized pmf with full support. The system is triangular; a zero
/// pivot, an inconsistent top equation, or a nonpositive mass is reported.
std::variant<ExactPMF, RecoveryError> recover_pmf(const SteinOperator& op, Statistic statistic);

struct SteinVerification {
  Statistic statistic;
  long m = 0;
  std::size_t basis_size = 0;
  std::size_t nonzero_residuals = 0;
  bool gamma_matches_derivation = false;
  bool recovered = false;
  std::string recovery_message;

  bool passed() const { return nonzero_residuals == 0 && gamma_matches_derivation && recovered; }
};

/// Residuals for every basis element 1{k >= j}, j = lower..upper, in O(b - a)
/// via suffix sums: c(j-1) p(j) + sum_{k >= j} gamma(k) p(k).
std::vector<Rational> basis_residuals(const SteinOperator& op, const ExactPMF& law);

/// Residual over the full indicator basis plus recovery of the pmf.
SteinVerification verify_characterization(Statistic statistic, long m);

}  // namespace stein_hn
