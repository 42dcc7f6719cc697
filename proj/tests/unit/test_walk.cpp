#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "stein_hn/walk.hpp"

using namespace stein_hn;

namespace {

WalkSummary from_steps(const std::vector<int>& steps) {
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (steps[k] > 0) bits |= std::uint64_t{1} << k;
  }
  return summarize_walk(std::span<const std::uint64_t>(&bits, 1), static_cast<int>(steps.size()));
}

}  // namespace

TEST(Walk, ForcedPaths) {
  const auto up = from_steps({1, 1});
  EXPECT_EQ(up.max_value, 2);
  EXPECT_EQ(up.returns, 0);
  const auto one = from_steps({-1});
  EXPECT_EQ(one.returns, 0);
  EXPECT_EQ(one.sign_changes, 0);
  EXPECT_EQ(one.max_value, 0);
}

TEST(Walk, CountsReturnsAndSignChanges) {
  // S = 0, 1, 0, -1, 0, 1, 2, 1
  const auto w = from_steps({1, -1, -1, 1, 1, 1, -1});
  EXPECT_EQ(w.returns, 2);
  EXPECT_EQ(w.sign_changes, 2);
  EXPECT_EQ(w.max_value, 2);
  EXPECT_EQ(statistic_value(w, Statistic::kHalfMax), 1);
  EXPECT_EQ(statistic_value(w, Statistic::kMax), 2);
  // Touching zero without crossing is not a sign change: S = 0, 1, 0, 1.
  EXPECT_EQ(from_steps({1, -1, 1}).sign_changes, 0);
}

TEST(Walk, MultiWordPaths) {
  std::vector<std::uint64_t> words{~std::uint64_t{0}, ~std::uint64_t{0}};
  const auto w = summarize_walk(words, 100);
  EXPECT_EQ(w.max_value, 100);
  EXPECT_EQ(w.returns, 0);
}

TEST(Walk, StatisticNames) {
  for (auto s : {Statistic::kReturns, Statistic::kMax, Statistic::kHalfMax, Statistic::kSignChanges}) {
    EXPECT_EQ(parse_statistic(to_string(s)), s);
  }
  EXPECT_FALSE(parse_statistic("median").has_value());
}
