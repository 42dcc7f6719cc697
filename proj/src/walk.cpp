#include "stein_hn/walk.hpp"

#include <algorithm>
#include <stdexcept>

namespace stein_hn {

std::string_view to_string(Statistic statistic) {
  switch (statistic) {
    case Statistic::kReturns: return "returns";
    case Statistic::kMax: return "max";
    case Statistic::kHalfMax: return "halfmax";
    case Statistic::kSignChanges: return "signchanges";
  }
  return "?";
}

std::optional<Statistic> parse_statistic(std::string_view name) {
  if (name == "returns") return Statistic::kReturns;
  if (name == "max") return Statistic::kMax;
  if (name == "halfmax") return Statistic::kHalfMax;
  if (name == "signchanges") return Statistic::kSignChanges;
  return std::nullopt;
}

WalkSummary summarize_walk(std::span<const std::uint64_t> step_bits, int n) {
  if (n < 0 || static_cast<std::size_t>(n) > 64 * step_bits.size()) {
    throw std::invalid_argument("summarize_walk: not enough step bits for the walk length");
  }
  WalkSummary summary;
  summary.n = n;
  long previous = 0;  // S_{k-1}
  long current = 0;   // S_k
  for (int k = 1; k <= n; ++k) {
    const bool up = (step_bits[(k - 1) / 64] >> ((k - 1) % 64)) & 1U;
    const long next = current + (up ? 1 : -1);
    // Sign change at k - 1 needs S_{k-2} S_k < 0, checked once S_k is known.
    if (k >= 2 && previous * next < 0) ++summary.sign_changes;
    previous = current;
    current = next;
    if (current == 0) ++summary.returns;
    summary.max_value = std::max<int>(summary.max_value, static_cast<int>(current));
  }
  return summary;
}

long statistic_value(const WalkSummary& walk, Statistic statistic) {
  switch (statistic) {
    case Statistic::kReturns: return walk.returns;
    case Statistic::kMax: return walk.max_value;
    case Statistic::kHalfMax: return (walk.max_value + 1) / 2;
    case Statistic::kSignChanges: return walk.sign_changes;
  }
  throw std::invalid_argument("statistic_value: unknown statistic");
}

}  // namespace stein_hn
