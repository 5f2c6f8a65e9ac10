#pragma once

#include <cstdint>
#include <functional>

namespace mshaz {

/// Worker count: hardware concurrency capped by the MSHAZ_THREADS
/// environment variable (re-read on every call so tests can toggle it).
int worker_count();

/// Run fn(begin, end) over [0, n) split into contiguous chunks across
/// workers. Chunks are disjoint, so counter-based per-index work is
/// deterministic regardless of the split.
void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn);

}  // namespace mshaz
