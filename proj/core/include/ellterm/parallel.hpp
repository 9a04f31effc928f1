#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ellterm {

// Runs fn(i) for i in [0, n). With degree <= 1 this is a plain loop; otherwise
// the index range is split into contiguous chunks, one thread per chunk.
// Results must be written to per-index slots so that the outcome does not
// depend on the degree; reductions belong to the (sequential) caller.
template <typename Fn>
void parallel_for(std::size_t n, int degree, Fn&& fn) {
  if (degree <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(degree), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Default worker count: ELLTERM_PARALLEL if set, else 1 (deterministic serial).
inline int default_parallelism() {
  if (const char* env = std::getenv("ELLTERM_PARALLEL")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

}  // namespace ellterm
