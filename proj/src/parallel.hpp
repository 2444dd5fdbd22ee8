#pragma once
// Index-parallel loop over a worker pool capped by RG_LIE_THREADS.

#include "rglie/check.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rglie {

unsigned worker_threads();

/// Runs f(i) for i in [0, n); the first exception is rethrown after all
/// workers stop.
template <class F>
void parallel_for(std::size_t n, F &&f) {
  const std::size_t T = std::min<std::size_t>(worker_threads(), n);
  if (T <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < T; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next++;
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
          next = n;
        }
      }
    });
  for (auto &th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

/// Appends a partial result (computed for a later index range) to `into`.
inline void merge_check(CheckResult &into, const CheckResult &part) {
  into.evaluated += part.evaluated;
  if (!part.passed) into.passed = false;
  for (const auto &w : part.witnesses)
    if (into.witnesses.size() < CheckResult::kMaxWitnesses) into.witnesses.push_back(w);
}

}  // namespace rglie
