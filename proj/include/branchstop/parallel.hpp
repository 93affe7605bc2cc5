#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace branchstop {

/// Worker count: BRANCHSTOP_THREADS if set, else hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("BRANCHSTOP_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(block_index, begin, end) over [0, n) split into fixed-size blocks.
/// The block partition depends only on (n, block_size), never on the worker
/// count, so per-block results merged in block order are reproducible.
inline void for_each_block(std::uint64_t n, std::uint64_t block_size,
                           const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
    if (n == 0) return;
    const std::uint64_t n_blocks = (n + block_size - 1) / block_size;
    const unsigned workers = std::min<std::uint64_t>(worker_count(), n_blocks);
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b)
            fn(b, b * block_size, std::min(n, (b + 1) * block_size));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t b = next.fetch_add(1);
                if (b >= n_blocks) break;
                fn(b, b * block_size, std::min(n, (b + 1) * block_size));
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace branchstop
