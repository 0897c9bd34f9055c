#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace newvec {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.  Work items must
/// be independent and write only to their own slots; results are then
/// identical for every job count.
inline void parallel_for(std::size_t count, unsigned jobs,
                         const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(jobs, count));
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& thread : threads) thread.join();
}

}  // namespace newvec
