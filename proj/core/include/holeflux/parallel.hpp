#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace holeflux {

// Runs f(i) for i in [0, n) on up to `threads` workers. Callers must write
// results into per-index slots; the work distribution never affects output.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
  if (threads < 1) threads = 1;
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0 && static_cast<unsigned>(threads) > hw) threads = static_cast<int>(hw);
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      f(i);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n_workers = std::min<std::size_t>(threads, n);
  pool.reserve(n_workers);
  for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace holeflux
