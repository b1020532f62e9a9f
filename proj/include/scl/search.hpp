#pragma once

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>

namespace scl {

inline constexpr uint64_t kNoHit = std::numeric_limits<uint64_t>::max();

// Least index in [0, total) accepted by a worker, scanning blocks in parallel.
// make() builds one worker per thread; worker.scan(begin, end, best) returns the first hit
// in [begin, end) or kNoHit, and may stop early once its position passes `best`.
template <class Make>
uint64_t parallel_first_hit(uint64_t total, uint64_t block, Make make) {
    if (total == 0) return kNoHit;
    block = std::max<uint64_t>(block, 1);
    const uint64_t nblocks = (total + block - 1) / block;
    std::atomic<uint64_t> best{kNoHit};
#pragma omp parallel
    {
        auto worker = make();
#pragma omp for schedule(dynamic, 1)
        for (int64_t b = 0; b < static_cast<int64_t>(nblocks); ++b) {
            uint64_t lo = static_cast<uint64_t>(b) * block;
            if (lo >= best.load(std::memory_order_relaxed)) continue;
            uint64_t hi = std::min(total, lo + block);
            uint64_t hit = worker.scan(lo, hi, best);
            uint64_t cur = best.load();
            while (hit < cur && !best.compare_exchange_weak(cur, hit)) {
            }
        }
    }
    return best.load();
}

}  // namespace scl
