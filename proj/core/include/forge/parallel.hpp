#pragma once

#include <cstddef>
#include <functional>

namespace forge {

// Worker count for internal fan-out: `requested` if non-zero, otherwise the
// FORGE_THREADS environment variable, otherwise hardware concurrency. The
// result is always capped by FORGE_THREADS when that is set.
std::size_t resolve_threads(std::size_t requested = 0);

// Runs body(begin, end, worker) over contiguous slices of [0, n). Slices are
// a pure function of (n, threads), so per-slice results can be reduced in
// slice order for deterministic output.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace forge
