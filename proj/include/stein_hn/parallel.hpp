#pragma once

#include <cstddef>
#include <functional>

namespace stein_hn {

/// Worker count: hardware concurrency, capped by STEIN_HN_THREADS when set
/// to a positive integer.
unsigned worker_count();

/// Calls body(i) for i in [0, count) across worker_count() threads. Indices
/// are handed out dynamically; body must only write to per-index state.
/// The first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace stein_hn
