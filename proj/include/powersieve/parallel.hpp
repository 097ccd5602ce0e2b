// parallel.hpp
// Index-ordered parallel map. Work is split into tasks whose boundaries
// never depend on the thread count, and results come back in task order,
// so reductions over them are bit-identical under any schedule.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace powersieve {

// Thread cap: explicit override if set, else POWERSIEVE_THREADS, else
// hardware concurrency (0 in the env var also means auto).
unsigned thread_count();
void set_thread_count(unsigned n);  // 0 clears the override

template <typename Fn>
auto parallel_map(std::size_t tasks, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(tasks);
  const std::size_t workers = std::min<std::size_t>(thread_count(), tasks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace powersieve
