#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace ffgeom {

/// Evaluates f(0..count-1) on up to `jobs` threads. Results keep index order,
/// so the output never depends on the schedule. The first exception thrown by
/// any task is rethrown on the calling thread.
template <typename F>
auto parallel_map(std::size_t count, F&& f, unsigned jobs = 1)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<R>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };

  const std::size_t width = std::min<std::size_t>(std::max(1U, jobs), std::max<std::size_t>(count, 1));
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (std::size_t t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<R> out;
  out.reserve(count);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace ffgeom
