#pragma once

// Monte Carlo simulation of simple random walks, used as a statistical
// cross-check of the exact laws.

#include <cstdint>
#include <vector>

#include "stein_hn/walk.hpp"

namespace stein_hn {

/// The k-th 64-bit word of stream `stream` under `seed`. Counter-based: each
/// word is a pure function of its three arguments.
std::uint64_t random_word(std::uint64_t seed, std::uint64_t stream, std::uint64_t k);

/// One path of length n (steps from single bits, 1 = up). Stream `stream`
/// under `seed`; deterministic. Throws std::domain_error for n < 1.
WalkSummary simulate_walk(int n, std::uint64_t seed, std::uint64_t stream = 0);

inline constexpr std::uint64_t kMinTrials = 10'000;

struct EmpiricalReport {
  Statistic statistic = Statistic::kReturns;
  long n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double slack = 0.0;
  /// Tally of the statistic's values 0, 1, ...
  std::vector<std::uint64_t> counts;
  /// max_k |F_emp(k) - F(k)| over the support.
  double max_deviation = 0.0;
  long argmax = 0;
  /// sqrt(ln(2/alpha) / (2 trials)).
  double dkw_threshold = 0.0;

  double threshold() const { return slack * dkw_threshold; }
  bool passed() const { return max_deviation < threshold(); }
};

/// Simulates `trials` walks (trial i uses stream i) in parallel and compares
/// the empirical CDF of the statistic with its exact law. Throws
/// std::invalid_argument if trials < 10^4; parity errors propagate.
EmpiricalReport empirical_check(Statistic statistic, long n, std::uint64_t trials,
                                std::uint64_t seed, double alpha = 1e-3, double slack = 2.0);

}  // namespace stein_hn
