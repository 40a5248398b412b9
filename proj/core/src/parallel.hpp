#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ordmatch::detail {

// Fixed chunk size: chunk boundaries never depend on the worker count.
inline constexpr std::uint64_t kTrialsPerChunk = 2048;

inline std::size_t resolve_workers(std::size_t requested, std::uint64_t chunks) {
  std::size_t workers = requested;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<std::size_t>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(chunks, 1)));
}

// Runs body(begin, end) -> Partial over consecutive trial ranges and returns
// the partials in range order. The first exception thrown by any worker is
// rethrown on the calling thread.
template <class Partial, class Body>
std::vector<Partial> run_chunks(std::uint64_t trials, std::size_t requested_workers, Body body) {
  const std::uint64_t chunks = (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  std::vector<Partial> partials(chunks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::uint64_t begin = c * kTrialsPerChunk;
        partials[c] = body(begin, std::min(trials, begin + kTrialsPerChunk));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };

  const std::size_t workers = resolve_workers(requested_workers, chunks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return partials;
}

}  // namespace ordmatch::detail
