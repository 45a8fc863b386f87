#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ttc {

/// Evaluates fn(0..n-1) on up to `parallel` threads. Results land in slot order,
/// so the outcome never depends on completion order. The first exception is rethrown.
template <class R, class Fn>
std::vector<R> fan_out(std::size_t n, int parallel, Fn fn) {
  std::vector<R> out(n);
  const auto workers = static_cast<std::size_t>(std::max(1, parallel));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace ttc
