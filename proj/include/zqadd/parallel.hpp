#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zqadd {

// Evaluates fn(i) for i in [0, n) on up to `workers` threads and returns the
// results in index order. The result never depends on the worker count.
template <class Fn>
auto parallel_map(std::size_t n, unsigned workers, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(n);
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

// Splits [0, total) into fixed-size blocks (independent of worker count) and
// maps fn(begin, end) over them.
template <class Fn>
auto parallel_blocks(std::size_t total, std::size_t block, unsigned workers, Fn&& fn) {
  const std::size_t blocks = (total + block - 1) / block;
  return parallel_map(blocks, workers, [&](std::size_t b) {
    return fn(b * block, std::min(total, (b + 1) * block));
  });
}

}  // namespace zqadd
