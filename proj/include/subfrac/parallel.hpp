#pragma once
// Deterministic batched parallelism for Monte Carlo work.
//
// Work is split into fixed-size batches indexed from 0; each batch derives
// its random stream from the batch index, so results are identical for any
// thread count, including 1.

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "subfrac/errors.hpp"

namespace subfrac {

// Thread count from SUBFRAC_THREADS, else the hardware concurrency.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("SUBFRAC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 4096) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Calls fn(batch_index, offset, count) for every batch of up to batch_size
// items covering [0, n_items), distributing batches over n_threads workers.
// fn must write only to disjoint, pre-allocated output slots.
template <class F>
void parallel_batches(std::size_t n_items, std::size_t batch_size, unsigned n_threads, F&& fn) {
  if (n_items == 0) throw parameter_error("parallel_batches: empty request (n_items = 0)");
  if (batch_size == 0) throw parameter_error("parallel_batches: batch_size must be positive");
  if (n_threads == 0) throw parameter_error("parallel_batches: need at least one thread");
  const std::size_t n_batches = (n_items + batch_size - 1) / batch_size;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_batches) return;
      const std::size_t offset = b * batch_size;
      const std::size_t count = std::min(batch_size, n_items - offset);
      fn(b, offset, count);
    }
  };
  if (n_threads == 1 || n_batches == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  const unsigned used = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_batches));
  pool.reserve(used);
  for (unsigned i = 0; i < used; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace subfrac
