#pragma once

#include <cstddef>
#include <functional>

namespace sfd {

/// Worker count for `jobs` independent tasks: hardware concurrency, capped by
/// the SFD_LAB_THREADS environment variable and by `jobs`.  At least 1.
unsigned worker_count(std::size_t jobs);

/// Runs body(i) for i in [0, n) on `threads` workers (0 means worker_count(n)).
/// Indices are handed out in contiguous blocks; the first exception thrown by
/// any worker is rethrown after all workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace sfd
