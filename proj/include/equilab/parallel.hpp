#pragma once
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace equilab {

// Thread count from EQUILAB_THREADS (default 1). Parallel loops write to
// per-index slots only and all reductions happen serially afterwards, so
// results are byte-identical for every thread count.
inline int thread_count() {
  if (const char* env = std::getenv("EQUILAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

// body(i) for i in [0, n); each i touched exactly once.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  int threads = thread_count();
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = static_cast<std::size_t>(t); i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace equilab
