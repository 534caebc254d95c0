#ifndef NASH_SENS_PARALLEL_H_
#define NASH_SENS_PARALLEL_H_

#include <cstdint>
#include <functional>

namespace nash_sens {

// Number of worker threads used by ParallelFor. Defaults to the hardware
// concurrency; 1 disables threading entirely.
int NumThreads();
void SetNumThreads(int threads);

// Splits [0, n) into contiguous chunks and calls body(begin, end) for each,
// possibly concurrently. Chunk boundaries depend only on n and grain, never
// on the thread count, so callers that write per-chunk results and merge
// them in chunk order get identical output for any degree of parallelism.
void ParallelChunks(std::int64_t n, std::int64_t grain,
                    const std::function<void(std::int64_t chunk,
                                             std::int64_t begin,
                                             std::int64_t end)>& body);

// Number of chunks ParallelChunks will use for (n, grain).
std::int64_t NumChunks(std::int64_t n, std::int64_t grain);

}  // namespace nash_sens

#endif  // NASH_SENS_PARALLEL_H_
