#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace tag {

/// 0 or negative means one worker per hardware thread.
int resolve_jobs(int jobs);

/// Runs produce(i) for i in [0, n) on `jobs` threads and hands results to
/// consume(i, result) strictly in index order on the calling thread. The first
/// exception thrown by produce is rethrown after the workers stop.
template <class Produce, class Consume>
void parallel_ordered(std::size_t n, int jobs, Produce produce, Consume consume) {
  using Result = decltype(produce(std::size_t{0}));
  const auto workers = static_cast<std::size_t>(resolve_jobs(jobs));
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) consume(i, produce(i));
    return;
  }
  std::mutex mutex;
  std::condition_variable ready;
  std::map<std::size_t, Result> pending;
  std::atomic<std::size_t> next_index{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  // Bounded look-ahead keeps memory flat when one game is slow.
  const std::size_t window = workers * 64;
  std::size_t consumed = 0;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next_index.fetch_add(1);
      if (i >= n || failed) return;
      {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return i < consumed + window || failed; });
        if (failed) return;
      }
      try {
        Result r = produce(i);
        std::lock_guard lock(mutex);
        pending.emplace(i, std::move(r));
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
      ready.notify_all();
    }
  };

  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(work);
  while (consumed < n) {
    std::optional<Result> r;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return failed || pending.count(consumed) > 0; });
      if (failed) break;
      auto it = pending.find(consumed);
      r.emplace(std::move(it->second));
      pending.erase(it);
    }
    try {
      consume(consumed, std::move(*r));
    } catch (...) {
      {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
      ready.notify_all();
      break;
    }
    {
      std::lock_guard lock(mutex);
      ++consumed;
    }
    ready.notify_all();
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tag
