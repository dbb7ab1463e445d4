#pragma once

// Order-preserving parallel map over an index range.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace linkpoly {

/// Calls f(i) for i in [0, n) on up to `jobs` threads; results come back in
/// index order, so reductions over them are deterministic. The first
/// exception thrown by a worker is rethrown here.
template <class F>
auto parallel_map(std::size_t n, int jobs, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using T = decltype(f(std::size_t{}));
  std::vector<std::optional<T>> slots(n);
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) slots[i].emplace(f(i));
  } else {
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
      for (std::size_t i = cursor++; i < n; i = cursor++) {
        try {
          slots[i].emplace(f(i));
        } catch (...) {
          std::lock_guard<std::mutex> g(failure_lock);
          if (!failure) failure = std::current_exception();
          cursor = n;
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace linkpoly
