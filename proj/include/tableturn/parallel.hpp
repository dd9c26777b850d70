#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tableturn {

// Worker count: TABLETURN_THREADS caps it, 1 disables threading.
inline int thread_count() {
  static const int n = [] {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("TABLETURN_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
      if (v >= 1 && static_cast<unsigned>(v) >= hw) hw = static_cast<unsigned>(v);
    }
    return static_cast<int>(hw);
  }();
  return n;
}

// Runs fn(i) for i in [0, n). Each index writes only its own slot, so results
// are identical to the sequential order regardless of scheduling. fn must not
// throw; wrap per-item failures into the item's result.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
  const int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace tableturn
