#pragma once

#include <cstddef>
#include <functional>

namespace valshare {

/// Worker count: `requested` if positive, else VALSHARE_THREADS, else 1.
int resolve_threads(int requested);

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Exceptions are
/// rethrown on the caller; the first one by index wins so failures are
/// reproducible regardless of scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace valshare
