#pragma once

#include <cstddef>
#include <functional>

namespace tfi {

/// Worker count used by parallel_for. Resolution order: value set through
/// set_worker_count, then the TFI_THREADS environment variable, then
/// hardware concurrency. 0 means auto.
size_t worker_count();
void set_worker_count(size_t n);

/// Runs fn over [0, n) split into one contiguous chunk per worker.
/// Chunk boundaries never affect results for the workloads in this
/// project (each index is computed independently), so any worker count
/// produces identical output.
void parallel_for(size_t n, const std::function<void(size_t, size_t)>& fn);

}  // namespace tfi
