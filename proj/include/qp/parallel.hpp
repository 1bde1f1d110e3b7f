#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qp {

/// Run fn(i) for i in [0, count) across hardware threads. Each index is
/// processed exactly once and results must be written to index-keyed slots, so
/// scheduling cannot change any output.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers = std::min<std::size_t>(count, hw > 0 ? hw : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (std::thread& t : threads) t.join();
}

}  // namespace qp
