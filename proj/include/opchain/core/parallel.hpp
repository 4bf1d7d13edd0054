#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace opchain {

// Worker count for verification sweeps: hardware concurrency, capped by the
// OPCHAIN_THREADS environment variable when it is set to a positive integer.
std::size_t sweep_threads();

// Calls body(i) for every i in [begin, end). Work is split into contiguous
// chunks; if any call throws, the exception from the smallest index is
// rethrown after all workers finish.
template <class Body>
void parallel_for(std::size_t begin, std::size_t end, Body&& body) {
  if (begin >= end) return;
  const std::size_t count = end - begin;
  const std::size_t workers = std::min(sweep_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::mutex guard;
  std::size_t failed_at = end;
  std::exception_ptr failure;
  auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo < hi) pool.emplace_back(run, lo, hi);
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace opchain
