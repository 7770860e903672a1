#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace primelab {

// Worker count used by parallel_map when none is given; 1 by default.
std::size_t default_threads();
void set_default_threads(std::size_t n);

// out[i] = fn(i) for i < n. Work is split into contiguous chunks, so the result
// never depends on the thread count. The first exception by index is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn, std::size_t threads = 0) {
  if (threads == 0) threads = default_threads();
  std::vector<T> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  threads = std::min(threads, n);
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t hi = std::min(n, (w + 1) * chunk);
      for (std::size_t i = w * chunk; i < hi; ++i) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace primelab
