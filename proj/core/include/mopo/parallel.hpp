#pragma once

#include <cstddef>
#include <functional>

namespace mopo {

/// Worker count: MOPO_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs body(begin, end) over contiguous blocks of [0, n). Exceptions thrown
/// by any block are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_block = 1024);

}  // namespace mopo
