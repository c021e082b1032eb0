#ifndef LSHARM_PARALLEL_HPP
#define LSHARM_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace lsharm {

/// Number of worker threads used by parallel_for. Resolution order:
/// explicit set_worker_threads(), then the LSHARM_THREADS environment
/// variable as an upper cap, then hardware concurrency.
int worker_threads();

/// 0 restores automatic selection.
void set_worker_threads(int n);

/// Runs fn(begin, end) over disjoint chunks of [begin, end) on the worker
/// pool. Chunk boundaries never affect results as long as writes are
/// disjoint; exceptions from workers are rethrown on the caller.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace lsharm

#endif
