#pragma once

#include <cstddef>
#include <functional>

namespace landscape {

/// Worker count: LANDSCAPE_THREADS when set to a positive integer, otherwise
/// the available hardware parallelism.
std::size_t default_thread_count();

/// Runs body(begin, end, worker) over a static contiguous split of [0, n).
/// `threads == 0` means default_thread_count(). Callers must combine
/// per-worker results in worker order (or with an associative exact
/// reduction) to stay independent of the split.
void parallel_for_ranges(
    std::size_t n, std::size_t threads,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Runs body(i) for every i in [0, n) across workers.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace landscape
