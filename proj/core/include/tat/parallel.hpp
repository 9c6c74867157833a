#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace tat {

/// Caps the number of worker threads used by parallel_for. 0 restores the
/// hardware default.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs body(i) for every i in [0, n). Work is split into contiguous chunks,
/// one per worker; each index is processed by exactly one worker, so results
/// written per index are independent of the thread count.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(max_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (std::size_t i = 0; i < std::min(n, chunk); ++i) body(i);
  for (auto& t : pool) t.join();
}

}  // namespace tat
