/*
 * Copyright 2026 The csmoute Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CSMOUTE_EXPERIMENT_PARALLEL_HPP
#define CSMOUTE_EXPERIMENT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "csmoute/detail/text.hpp"
#include "csmoute/error.hpp"

namespace csmoute::experiment {

inline constexpr const char* threads_env = "RESAMPLE_BENCH_THREADS";

/// Worker count: the explicit request, else RESAMPLE_BENCH_THREADS, else the
/// hardware concurrency.
inline std::size_t resolve_threads(std::optional<long long> requested = std::nullopt) {
  if (requested) {
    if (*requested < 1) throw ArgumentError("thread count must be at least 1");
    return static_cast<std::size_t>(*requested);
  }
  if (const char* env = std::getenv(threads_env); env && *env) {
    const auto v = csmoute::detail::parse_double(env);
    if (!v || *v < 1 || *v != static_cast<double>(static_cast<long long>(*v))) {
      throw ArgumentError(std::string(threads_env) + " must be a positive integer, got '" + env + "'");
    }
    return static_cast<std::size_t>(*v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Each index runs
/// exactly once; the first exception escaping fn is rethrown after all
/// workers have stopped.
template <class F>
void parallel_for(std::size_t n, std::size_t threads, F&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::atomic_flag error_taken = ATOMIC_FLAG_INIT;
  auto work = [&] {
    for (std::size_t i = next++; i < n && !stop; i = next++) {
      try {
        fn(i);
      } catch (...) {
        if (!error_taken.test_and_set()) error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace csmoute::experiment

#endif  // CSMOUTE_EXPERIMENT_PARALLEL_HPP
