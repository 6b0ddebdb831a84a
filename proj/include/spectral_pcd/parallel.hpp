// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECTRAL_PCD_PARALLEL_HPP
#define SPECTRAL_PCD_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spcd {

inline constexpr const char* kThreadsEnvVar = "SPECTRAL_PCD_THREADS";

/// Worker cap from SPECTRAL_PCD_THREADS; unset, unparsable or 0 means
/// hardware concurrency.
inline std::size_t thread_limit() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv(kThreadsEnvVar);
  if (env == nullptr) return hw;
  std::size_t value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc{} || ptr != end || value == 0) return hw;
  return value;
}

/// Calls fn(i) for i in [0, count) on up to `threads` workers. Work items must
/// be independent; results are identical to the sequential loop. The first
/// exception thrown by any item is rethrown after all workers join.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::min(std::max<std::size_t>(threads, 1), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace spcd

#endif  // SPECTRAL_PCD_PARALLEL_HPP
