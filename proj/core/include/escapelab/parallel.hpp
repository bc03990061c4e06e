#pragma once

#include <cstddef>
#include <functional>

namespace escapelab {

// Worker cap: min(hardware_concurrency, ESCAPE_LAB_THREADS). At least 1.
std::size_t worker_count();

// Runs fn(block) for block = 0..blocks-1 on up to worker_count() threads.
// Blocks are claimed atomically; callers must write results into
// per-block slots and reduce in block order to stay deterministic.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& fn);

}  // namespace escapelab
