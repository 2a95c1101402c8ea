#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace braidsurf {

// Deterministic work split: index range is cut into fixed contiguous chunks,
// one per worker, so results never depend on scheduling. threads <= 1 runs
// inline. Body must only write to per-index slots it owns.
inline void parallel_for(std::int64_t begin, std::int64_t end, int threads,
                         const std::function<void(std::int64_t)>& body) {
  if (end <= begin) return;
  if (threads <= 1) {
    for (std::int64_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::int64_t total = end - begin;
  int workers = static_cast<int>(std::min<std::int64_t>(threads, total));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = begin + total * w / workers;
    std::int64_t hi = begin + total * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errs[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace braidsurf
