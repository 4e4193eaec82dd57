#pragma once

#include <cstddef>
#include <functional>

namespace pframes {

/// Worker count: FRAMES_THREADS if set to a positive integer, otherwise the
/// hardware concurrency. Never changes results, only wall-clock time.
std::size_t worker_count();

/// Fixed work granularity. Block boundaries depend only on the problem size.
inline constexpr std::size_t kBlockSize = 8192;

inline std::size_t block_count(std::size_t n) noexcept { return (n + kBlockSize - 1) / kBlockSize; }

/// Calls body(block) for every block in [0, n_blocks). Blocks are distributed
/// over worker threads; body must only write block-local output.
void parallel_for_blocks(std::size_t n_blocks, const std::function<void(std::size_t)>& body);

}  // namespace pframes
