#pragma once

// Minimal chunked parallel loop. FFMEAN_THREADS caps the worker count.

#include <cstddef>
#include <functional>

namespace ffmean {

/// Worker count: FFMEAN_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Splits [0, n) into `chunks` contiguous ranges (0 = one per worker) and calls
/// body(begin, end, chunk_index) for each, possibly concurrently. Chunk
/// boundaries depend only on n and chunks, so per-chunk results combined in
/// chunk order are deterministic. The first exception thrown is rethrown.
void parallel_for(std::size_t n, std::size_t chunks,
                  const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Number of chunks parallel_for will use for a request of `chunks` over n items.
std::size_t chunk_count(std::size_t n, std::size_t chunks);

}  // namespace ffmean
