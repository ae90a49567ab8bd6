#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "fracstable/stable_sampling.hpp"

namespace fracstable {

/// Samples per chunk; chunk k always draws from RngStream(seed, k), so the
/// ensemble does not depend on how many workers share the chunks.
inline constexpr std::size_t kEnsembleChunk = 4096;

/// n draws of draw(rng) -> T, generated in fixed-size chunks on `workers`
/// threads (0 or 1: calling thread only). Result order is chunk order.
template <typename T, typename Draw>
std::vector<T> generate_ensemble(std::size_t n, std::uint64_t seed, int workers, Draw draw) {
  std::vector<T> out(n);
  const std::size_t chunks = (n + kEnsembleChunk - 1) / kEnsembleChunk;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= chunks) return;
      try {
        RngStream rng(seed, k);
        const std::size_t end = std::min(n, (k + 1) * kEnsembleChunk);
        for (std::size_t i = k * kEnsembleChunk; i < end; ++i) out[i] = draw(rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
        return;
      }
    }
  };

  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(chunks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace fracstable
