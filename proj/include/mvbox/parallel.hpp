#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace mvbox {

// Runs fn(i) for i in [begin, end) across up to hardware_concurrency
// threads. Each index must write only its own outputs; results are then
// independent of the partitioning, so parallel runs stay bit-deterministic.
template <typename Fn>
void parallel_for(std::int64_t begin, std::int64_t end, Fn&& fn,
                  int max_threads = 0) {
  std::int64_t n = end - begin;
  if (n <= 0) return;
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (max_threads > 0) hw = std::min(hw, max_threads);
  int n_threads = static_cast<int>(std::min<std::int64_t>(hw, n));
  if (n_threads <= 1 || n < 256) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::int64_t chunk = (n + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    std::int64_t lo = begin + t * chunk;
    std::int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace mvbox
