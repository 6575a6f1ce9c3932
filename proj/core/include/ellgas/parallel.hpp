#pragma once

#include <cstddef>
#include <functional>

namespace ellgas {

/// Number of worker threads: ELLIPTIC_GAS_THREADS if set, otherwise the last
/// set_max_threads() value, otherwise the hardware concurrency.
int max_threads();

/// Overrides the worker count (0 restores the default).  Thread count never
/// changes results: workers only fill disjoint slots of preallocated
/// buffers and reductions run in a fixed order afterwards.
void set_max_threads(int count);

/// Runs fn(begin, end) over a partition of [0, n) in contiguous chunks,
/// possibly concurrently.  fn must only write to disjoint per-index state.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace ellgas
