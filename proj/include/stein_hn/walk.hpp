#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace stein_hn {

/// The simple-random-walk statistics studied here.
///   returns      K_n = #{1 <= k <= n : S_k = 0}, n = 2m
///   max          M_n = max_{0 <= k <= n} S_k, n = 2m
///   halfmax      N_n = floor((M_n + 1) / 2), n = 2m
///   signchanges  C_n = #{1 <= k <= n-1 : S_{k-1} S_{k+1} < 0}, n = 2m + 1
enum class Statistic { kReturns, kMax, kHalfMax, kSignChanges };

std::string_view to_string(Statistic statistic);
std::optional<Statistic> parse_statistic(std::string_view name);

struct WalkSummary {
  int n = 0;
  int max_value = 0;
  int returns = 0;
  int sign_changes = 0;
};

/// Statistics of the path whose k-th step (k = 1..n) is +1 when bit k-1 of
/// `step_bits` is set and -1 otherwise. Bits are read little-endian across
/// words.
WalkSummary summarize_walk(std::span<const std::uint64_t> step_bits, int n);

long statistic_value(const WalkSummary& walk, Statistic statistic);

}  // namespace stein_hn
