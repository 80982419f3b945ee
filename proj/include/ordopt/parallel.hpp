#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace ordopt::detail {

/// 0 means "all hardware threads".
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(begin, end, worker) over contiguous chunks of [0, count).
/// Chunk boundaries depend only on (count, workers).
template <class Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  const auto w = static_cast<std::size_t>(std::max(1, workers));
  const std::size_t chunks = std::min(w, std::max<std::size_t>(count, 1));
  if (chunks <= 1) {
    body(std::size_t{0}, count, 0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(chunks - 1);
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    threads.emplace_back([&body, begin, end, c] { body(begin, end, static_cast<int>(c)); });
  }
  body(std::size_t{0}, count / chunks, 0);
  for (auto& t : threads) t.join();
}

}  // namespace ordopt::detail
