#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace tic {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw != 0 ? hw : 1;
}

// Splits [0, total) into contiguous chunks, one per worker. The callback gets
// (worker index, begin, end); results must not depend on the partition.
inline void run_partitioned(std::uint64_t total, unsigned n_workers,
                            const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
    n_workers = resolve_workers(n_workers);
    if (n_workers <= 1 || total < 2) {
        fn(0, 0, total);
        return;
    }
    n_workers = static_cast<unsigned>(std::min<std::uint64_t>(n_workers, total));
    const std::uint64_t chunk = (total + n_workers - 1) / n_workers;
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        const std::uint64_t begin = static_cast<std::uint64_t>(w) * chunk;
        const std::uint64_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back(fn, w, begin, end);
    }
    for (auto& t : threads) t.join();
}

} // namespace tic
