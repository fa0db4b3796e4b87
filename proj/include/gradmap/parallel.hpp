#pragma once

#include <cstddef>
#include <functional>

namespace gradmap {

/// Number of worker threads: hardware concurrency, capped by GRADMAP_THREADS.
unsigned worker_count();

/// Runs fn(i) for i in [0, count). Jobs are claimed dynamically, so callers
/// must write results into slot i only. The first exception thrown by any job
/// is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace gradmap
