#pragma once

#include <functional>

namespace diracfem {

/// Worker count for element-parallel loops. Defaults to the hardware
/// concurrency (clamped to 8) and is capped by the DIRACFEM_THREADS
/// environment variable.
int worker_count();

/// Runs fn(i) for every i in [0, n), splitting the range over up to
/// worker_count() threads. Each index is processed exactly once; callers
/// store per-index results and reduce serially so output does not depend
/// on the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace diracfem
