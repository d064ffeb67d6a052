#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace manet::detail {

// Chunked index-parallel loop. Each index is processed exactly once; callers
// write results into per-index slots so the outcome is independent of the
// worker count.
template <typename Fn>
void parallel_for_index(int jobs, long long count, Fn&& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count < 2) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = int(std::min<long long>(jobs, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const long long chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long long lo = w * chunk;
    const long long hi = std::min(count, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (long long i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace manet::detail
