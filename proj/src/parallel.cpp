#include "lsharm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace lsharm {

namespace {
std::atomic<int> g_threads{0};

int env_cap() {
  if (const char* s = std::getenv("LSHARM_THREADS")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 0;
}
}  // namespace

int worker_threads() {
  int n = g_threads.load();
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (int cap = env_cap(); cap > 0) n = std::min(n, cap);
  return n;
}

void set_worker_threads(int n) { g_threads.store(n > 0 ? n : 0); }

void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t, std::int64_t)>& fn) {
  const std::int64_t count = end - begin;
  if (count <= 0) return;
  const int nthreads = static_cast<int>(
      std::min<std::int64_t>(worker_threads(), count));
  if (nthreads <= 1) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  std::exception_ptr err;
  std::atomic<bool> have_err{false};
  const std::int64_t chunk = (count + nthreads - 1) / nthreads;
  for (int t = 0; t < nthreads; ++t) {
    const std::int64_t lo = begin + t * chunk;
    const std::int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        if (!have_err.exchange(true)) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace lsharm
