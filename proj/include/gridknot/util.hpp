#pragma once
#include <atomic>

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace gridknot {

/// Fixed-chunk parallel loop. Work is split into a chunk grid that does not
/// depend on the thread count, so any reduction done per chunk and merged in
/// chunk order gives thread-count-independent results.
constexpr int kParallelChunks = 16;

inline void parallel_for_chunked(int total, int threads,
                                 const std::function<void(int, int)>& body) {
  if (total <= 0) return;
  const int chunks = std::min(kParallelChunks, total);
  auto chunk_bounds = [&](int c) {
    const int lo = static_cast<int>(static_cast<long long>(total) * c / chunks);
    const int hi = static_cast<int>(static_cast<long long>(total) * (c + 1) / chunks);
    return std::pair<int, int>(lo, hi);
  };
  if (threads <= 1) {
    for (int c = 0; c < chunks; ++c) {
      auto [lo, hi] = chunk_bounds(c);
      body(lo, hi);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  const int workers = std::min(threads, chunks);
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int c = next.fetch_add(1);
        if (c >= chunks) return;
        auto [lo, hi] = chunk_bounds(c);
        body(lo, hi);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gridknot
