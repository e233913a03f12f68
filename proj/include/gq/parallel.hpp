#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace gq {

/// Worker cap: the GQ_THREADS environment variable when set (minimum 1),
/// otherwise the hardware concurrency. Re-read on every call so tests can
/// vary it.
int worker_count();

namespace detail {

/// Runs fn(block) for block = 0..num_blocks-1 on up to worker_count()
/// threads. The block decomposition is fixed by the caller, so per-block
/// results (and any in-order combination of them) do not depend on how many
/// workers ran.
template <class Fn>
void run_blocks(int num_blocks, Fn&& fn) {
  const int workers = std::min(worker_count(), num_blocks);
  if (workers <= 1) {
    for (int b = 0; b < num_blocks; ++b) fn(b);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto drain = [&] {
    try {
      for (;;) {
        const int b = next.fetch_add(1, std::memory_order_relaxed);
        if (b >= num_blocks) break;
        fn(b);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail
}  // namespace gq
