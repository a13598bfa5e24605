#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace opinionshift {

// Worker cap: OPINION_SHIFT_THREADS if set (>=1), otherwise hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("OPINION_SHIFT_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) return static_cast<int>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs body(begin, end) over disjoint chunks of [0, total). Callers must make
// per-chunk results order-independent (e.g. integer tallies) so that the
// outcome does not depend on the worker count.
template <typename Body>
void parallel_for_blocks(std::int64_t total, std::int64_t grain, Body&& body) {
    if (total <= 0) return;
    const int workers = worker_count();
    if (workers <= 1 || total <= grain) {
        body(std::int64_t{0}, total);
        return;
    }
    std::atomic<std::int64_t> cursor{0};
    auto drain = [&] {
        for (;;) {
            const std::int64_t begin = cursor.fetch_add(grain);
            if (begin >= total) break;
            body(begin, std::min(begin + grain, total));
        }
    };
    std::vector<std::thread> pool;
    const int spawned = static_cast<int>(std::min<std::int64_t>(workers, (total + grain - 1) / grain));
    pool.reserve(spawned - 1);
    for (int i = 1; i < spawned; ++i) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
}

}  // namespace opinionshift
