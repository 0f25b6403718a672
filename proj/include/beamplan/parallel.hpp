// Deterministic parallel execution: work items write into preassigned
// slots and reductions happen afterwards in index order, so thread count
// and scheduling never change results.
#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace beamplan {

/// Worker count: BEAMPLAN_THREADS if set, otherwise hardware concurrency.
inline unsigned default_thread_count() {
    if (const char* env = std::getenv("BEAMPLAN_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs f(i) for i in [0, count) across threads in contiguous blocks.
/// f must only touch state owned by index i.
template <class F>
void parallel_for(std::size_t count, F&& f, unsigned threads = 0) {
    if (threads == 0) threads = default_thread_count();
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    if (threads > count) threads = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t begin = t * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&f, begin, end] {
            for (std::size_t i = begin; i < end; ++i) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace beamplan
