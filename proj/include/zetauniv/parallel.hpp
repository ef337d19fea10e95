#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace zetauniv {

struct Parallelism {
  int threads = 1;
};

/// Calls fn(i) for i in [0, count) on up to `threads` threads, each owning
/// a contiguous index range. fn must not throw and must only write state
/// keyed by its index.
template <typename Fn>
void parallel_for(std::size_t count, const Parallelism& parallelism, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, parallelism.threads));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t used = std::min(workers, count);
  const std::size_t chunk = (count + used - 1) / used;
  std::vector<std::jthread> pool;
  pool.reserve(used);
  for (std::size_t w = 0; w < used; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

}  // namespace zetauniv
