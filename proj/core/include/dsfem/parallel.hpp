#pragma once

#include <functional>

namespace dsfem {

/// Worker count: FEM_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Calls f(i) for i in [0, count) on up to worker_count() threads, each
/// taking a contiguous block. Callers write results into per-index slots and
/// merge afterwards in index order. If any call throws, the exception from
/// the lowest failing index is rethrown.
void parallel_for(int count, const std::function<void(int)>& f);

}  // namespace dsfem
