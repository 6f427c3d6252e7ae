#pragma once

// Chunked parallel map over an index range. Work item i writes only to
// slot i of a preallocated result, so the merged output never depends on
// the worker count.

#include <atomic>
#include <thread>
#include <vector>

namespace mdiag {

template <class F>
void parallel_for(size_t n, int jobs, F&& f) {
  if (jobs > static_cast<int>(n)) jobs = static_cast<int>(n);
  if (jobs <= 1) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int t = 0; t < jobs; ++t)
    workers.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  for (auto& w : workers) w.join();
}

}  // namespace mdiag
