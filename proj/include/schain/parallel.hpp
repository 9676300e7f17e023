#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace schain {

// Worker cap from SCHAIN_THREADS (0 or unset = hardware concurrency).
int thread_budget();

/// Runs f(i) for i in [0, n). Work is split into contiguous chunks; callers
/// must write results into per-index slots so the outcome is independent of
/// the thread count.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_budget()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    pool.emplace_back([lo, hi, &f] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace schain
