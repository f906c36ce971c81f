#pragma once
// Minimal index-parallel loop over a worker pool. Results must be written
// to per-index slots by the caller so the schedule cannot change output.

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace featnet {

inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                         unsigned workers = 0) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace featnet
