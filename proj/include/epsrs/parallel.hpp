#pragma once

#include <cstddef>
#include <functional>

namespace epsrs {

/// Worker count: hardware concurrency, capped by the EPSRS_THREADS environment variable.
std::size_t worker_count();

/// Calls body(i) for i in [0, n), split into contiguous blocks across worker threads.
/// Each call must write only to its own preallocated slot so results do not depend on
/// scheduling. The first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace epsrs
