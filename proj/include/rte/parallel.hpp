#pragma once

#include <functional>

namespace rte {

/// Worker count: `requested` if positive, else $RTE_THREADS if set, else the
/// hardware concurrency. Always at least 1.
int resolve_thread_count(int requested = 0);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; the first exception thrown by any worker is rethrown.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace rte
