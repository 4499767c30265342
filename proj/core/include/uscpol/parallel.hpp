#pragma once

#include <cstddef>
#include <functional>

namespace uscpol {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Indices are split
// into contiguous blocks, so results written by index do not depend on the
// worker count. An exception from the lowest-indexed failing block is rethrown.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

// Worker count: the explicit value if nonzero, else USCPOL_THREADS, else the
// hardware concurrency.
std::size_t resolve_threads(std::size_t requested);

}  // namespace uscpol
