#pragma once

#include <cstddef>
#include <functional>

namespace ringdist {

/// Worker count: RINGDIST_THREADS when set to a positive integer, otherwise
/// the machine's hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, n) on up to
/// worker_count() threads. The first exception thrown by any chunk is
/// rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ringdist
