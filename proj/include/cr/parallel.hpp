#pragma once

#include <cstddef>
#include <functional>

namespace cr {

/// Worker count: hardware concurrency, capped by the CR_THREADS environment variable.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is
/// handled exactly once; callers write results into per-index slots and reduce
/// afterwards in index order, so results do not depend on scheduling. The
/// first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace cr
