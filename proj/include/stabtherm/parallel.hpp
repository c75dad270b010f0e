#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stabtherm {

/**
 * Run fn(begin, end, worker) over [0, n) split into contiguous chunks,
 * one chunk per worker.  Workers receive disjoint index ranges in
 * ascending order, so any per-index results written to preallocated
 * slots (or reduced by minimum index) are independent of the thread
 * count.  The first exception thrown by a worker is rethrown here.
 */
template <typename Fn>
void parallel_chunks(uint64_t n, unsigned threads, Fn&& fn) {
  if (threads < 1) threads = 1;
  if (threads == 1 || n <= 1) {
    fn(uint64_t(0), n, 0u);
    return;
  }
  unsigned workers = unsigned(std::min<uint64_t>(threads, n));
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (unsigned t = 0; t < workers; ++t) {
    uint64_t begin = n * t / workers;
    uint64_t end = n * (t + 1) / workers;
    pool.emplace_back([&, begin, end, t]() {
      try {
        fn(begin, end, t);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace stabtherm
