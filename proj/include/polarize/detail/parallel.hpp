// Deterministic fork-join helpers. Work is split into contiguous index
// ranges; callers write into per-index slots and reduce in order, so results
// do not depend on the worker count.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace polarize::detail {

/// Worker cap: POLARIZE_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("POLARIZE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, count) into at most 64 contiguous chunks. The split depends
/// only on count.
inline std::vector<std::pair<int, int>> partition(int count, int max_chunks = 64) {
  std::vector<std::pair<int, int>> out;
  const int chunks = std::max(1, std::min(count, max_chunks));
  for (int c = 0; c < chunks; ++c)
    out.emplace_back(static_cast<int>(static_cast<long long>(count) * c / chunks),
                     static_cast<int>(static_cast<long long>(count) * (c + 1) / chunks));
  return out;
}

/// Calls fn(i) for i in [0, count). The first exception thrown by any task
/// is rethrown on the calling thread.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::mutex mu;
  int next = 0;
  std::exception_ptr error;
  auto run = [&] {
    for (;;) {
      int i;
      {
        std::lock_guard lock(mu);
        if (next >= count || error) return;
        i = next++;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

/// splitmix64 step; used to derive independent per-task seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  return mix_seed(mix_seed(mix_seed(base) ^ a) ^ b);
}

}  // namespace polarize::detail
