#pragma once

#include <cstddef>
#include <functional>

namespace heston {

/// Worker threads used by the engines: HESTON_THREADS when set (>= 1),
/// hardware concurrency otherwise. Thread count never changes results; all
/// parallel loops write disjoint outputs and reductions run in a fixed order.
int worker_count();

/// fn(i) for every i in [0, n), statically partitioned across workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// fn(begin, end) over contiguous blocks of the given size (the last block
/// may be short). Blocks are distributed across workers.
void parallel_for_blocks(std::size_t n, std::size_t block_size,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace heston
