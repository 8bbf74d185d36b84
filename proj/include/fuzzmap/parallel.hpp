#pragma once

#include <cstddef>
#include <functional>

namespace fuzzmap {

/// Worker count: FUZZMAP_THREADS when set and > 0, otherwise the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Overrides thread_count() for this process; 0 restores the default.
void set_thread_count(std::size_t threads);

/// Splits [0, n) into contiguous chunks and calls body(begin, end) once per
/// chunk. Chunk boundaries depend only on n and the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fuzzmap
