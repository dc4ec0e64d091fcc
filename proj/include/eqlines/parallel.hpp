#pragma once

#include <cstddef>
#include <functional>

namespace eqlines {

/// Number of worker threads used by enumeration and counting scans. Read from
/// the EQLINES_WORKERS environment variable; defaults to the hardware
/// concurrency, never less than 1.
std::size_t worker_count();

/// Workers that parallel_indices(n, ...) will use: min(worker_count(), n), at least 1.
std::size_t workers_for(std::size_t n);

/// Calls body(worker, i) for every i in [0, n), distributing indices
/// round-robin over workers_for(n) threads. Each worker id runs on exactly one
/// thread, so per-worker accumulators need no locking.
void parallel_indices(std::size_t n, const std::function<void(std::size_t worker, std::size_t index)>& body);

}  // namespace eqlines
