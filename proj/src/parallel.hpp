#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace spinsq::detail {

// Calls fn(i) for i in [0, count) on up to `threads` workers using a static
// interleaved partition. Callers write results by index, so output order does
// not depend on scheduling.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (int i = w; i < count; i += threads) fn(i);
    });
  }
}

}  // namespace spinsq::detail
