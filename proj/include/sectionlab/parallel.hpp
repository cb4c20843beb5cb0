#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace sectionlab {

// Worker count: SECTIONLAB_THREADS caps it, hardware concurrency is the
// default, always at least 1.
inline int thread_cap() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("SECTIONLAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < hw) hw = cap;
  }
  return hw;
}

// Runs fn(i) for i in [0, count) on up to thread_cap() workers.  fn must be
// safe for concurrent invocation on distinct indices.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  int workers = thread_cap();
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < count;
           i += static_cast<std::size_t>(workers))
        fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace sectionlab
