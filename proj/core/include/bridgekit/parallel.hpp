#ifndef BRIDGEKIT_PARALLEL_HPP_
#define BRIDGEKIT_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace bridgekit {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// claimed exactly once; fn must only write state owned by index i so the
/// result is schedule-independent.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  unsigned count = std::min<std::size_t>(threads, n);
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace bridgekit

#endif  // BRIDGEKIT_PARALLEL_HPP_
