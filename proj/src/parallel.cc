#include "nash_sens/parallel.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nash_sens {
namespace {

std::atomic<int> g_threads{0};

}  // namespace

int NumThreads() {
  int t = g_threads.load();
  if (t > 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

void SetNumThreads(int threads) { g_threads.store(std::max(0, threads)); }

std::int64_t NumChunks(std::int64_t n, std::int64_t grain) {
  if (n <= 0) return 0;
  grain = std::max<std::int64_t>(1, grain);
  return (n + grain - 1) / grain;
}

void ParallelChunks(std::int64_t n, std::int64_t grain,
                    const std::function<void(std::int64_t, std::int64_t,
                                             std::int64_t)>& body) {
  const std::int64_t chunks = NumChunks(n, grain);
  if (chunks == 0) return;
  grain = std::max<std::int64_t>(1, grain);
  auto run_chunk = [&](std::int64_t c) {
    const std::int64_t begin = c * grain;
    body(c, begin, std::min(n, begin + grain));
  };

  const int workers =
      static_cast<int>(std::min<std::int64_t>(NumThreads(), chunks));
  if (workers <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::int64_t c = next++; c < chunks; c = next++) {
      try {
        run_chunk(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = chunks;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace nash_sens
