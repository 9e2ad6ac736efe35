#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace nkcloud {

inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Chunk length for `total` items. Depends on `total` only, never on the
/// worker count, so per-chunk partial results and their in-order reduction
/// are identical however many threads run.
inline std::uint64_t chunk_length(std::uint64_t total) {
  constexpr std::uint64_t kMinChunk = 4096;
  constexpr std::uint64_t kMaxChunks = 1024;
  return std::max(kMinChunk, (total + kMaxChunks - 1) / kMaxChunks);
}

/// Runs `fn(first, last)` over consecutive chunks of [0, total) on up to
/// `workers` threads and returns the results in chunk order. The first
/// exception thrown by any chunk is rethrown on the calling thread.
template <class Fn>
auto map_chunks(std::uint64_t total, unsigned workers, Fn fn) {
  using Result = decltype(fn(std::uint64_t{}, std::uint64_t{}));
  const std::uint64_t len = chunk_length(total);
  const std::uint64_t chunks = (total + len - 1) / len;
  std::vector<std::optional<Result>> slots(chunks);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto drain = [&] {
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
      try {
        slots[c].emplace(fn(c * len, std::min(total, (c + 1) * len)));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    }
  };

  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), chunks));
  if (threads <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(drain);
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Result> results;
  results.reserve(chunks);
  for (auto& s : slots) results.push_back(std::move(*s));
  return results;
}

}  // namespace nkcloud
