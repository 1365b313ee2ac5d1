#include "ffmean/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ffmean {

unsigned thread_count() {
  if (const char* env = std::getenv("FFMEAN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t chunk_count(std::size_t n, std::size_t chunks) {
  if (n == 0) return 0;
  if (chunks == 0) chunks = thread_count();
  return std::min(n, chunks);
}

void parallel_for(std::size_t n, std::size_t chunks,
                  const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t c = chunk_count(n, chunks);
  if (c == 0) return;
  auto range = [&](std::size_t i) { return std::pair{n * i / c, n * (i + 1) / c}; };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), c));
  if (workers <= 1) {
    for (std::size_t i = 0; i < c; ++i) {
      auto [b, e] = range(i);
      body(b, e, i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < c;) {
      try {
        auto [b, e] = range(i);
        body(b, e, i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ffmean
