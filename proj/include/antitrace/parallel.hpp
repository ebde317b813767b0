#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace antitrace {

// Worker count from ANTITRACE_THREADS, else the hardware concurrency.
inline int default_thread_count() {
  if (const char* env = std::getenv("ANTITRACE_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

inline int resolve_threads(int requested) { return requested >= 1 ? requested : default_thread_count(); }

// Calls body(i) for every i in [0, count) from up to `threads` workers. Items
// are handed out dynamically, so callers write results into per-index slots
// to keep the outcome independent of scheduling. The first exception thrown
// by any item is rethrown after all workers stop.
template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || stop.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace antitrace
