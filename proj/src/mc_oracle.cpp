#include "stein_hn/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stein_hn/parallel.hpp"
#include "stein_hn/rational.hpp"
#include "stein_hn/srw_laws.hpp"

namespace stein_hn {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kChunks = 256;

}  // namespace

std::uint64_t random_word(std::uint64_t seed, std::uint64_t stream, std::uint64_t k) {
  const std::uint64_t key = mix(mix(seed + kGolden) ^ (stream * 0xd1b54a32d192ed03ULL));
  return mix(key + (k + 1) * kGolden);
}

WalkSummary simulate_walk(int n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw std::domain_error("simulate_walk: n must be >= 1");
  std::vector<std::uint64_t> words(static_cast<std::size_t>((n + 63) / 64));
  for (std::size_t k = 0; k < words.size(); ++k) words[k] = random_word(seed, stream, k);
  return summarize_walk(words, n);
}

EmpiricalReport empirical_check(Statistic statistic, long n, std::uint64_t trials,
                                std::uint64_t seed, double alpha, double slack) {
  if (trials < kMinTrials) throw std::invalid_argument("empirical_check: trials must be >= 10000");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("empirical_check: alpha must lie in (0, 1)");
  const long m = parameter_for_length(statistic, n);
  const ExactPMF pmf = pmf_for_parameter(statistic, m);

  const std::size_t width = pmf.size();
  std::vector<std::vector<std::uint64_t>> tallies(kChunks, std::vector<std::uint64_t>(width, 0));
  parallel_for(kChunks, [&](std::size_t c) {
    const std::uint64_t begin = trials * c / kChunks;
    const std::uint64_t end = trials * (c + 1) / kChunks;
    auto& tally = tallies[c];
    for (std::uint64_t t = begin; t < end; ++t) {
      const long value = statistic_value(simulate_walk(static_cast<int>(n), seed, t), statistic);
      ++tally[static_cast<std::size_t>(value - pmf.lower())];
    }
  });

  EmpiricalReport report;
  report.statistic = statistic;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.alpha = alpha;
  report.slack = slack;
  report.counts.assign(width, 0);
  for (const auto& tally : tallies) {
    for (std::size_t i = 0; i < width; ++i) report.counts[i] += tally[i];
  }

  const auto cdf = pmf.cumulative();
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < width; ++i) {
    running += report.counts[i];
    const double empirical = static_cast<double>(running) / static_cast<double>(trials);
    const double gap = std::abs(empirical - to_double(cdf[i]));
    if (gap > report.max_deviation) {
      report.max_deviation = gap;
      report.argmax = pmf.lower() + static_cast<long>(i);
    }
  }
  report.dkw_threshold = std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(trials)));
  return report;
}

}  // namespace stein_hn
