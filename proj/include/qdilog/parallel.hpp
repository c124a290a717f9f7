#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qdilog {

/// Worker cap for internal parallelism: QDILOG_THREADS if set (>=1), else the
/// hardware concurrency.
inline unsigned parallel_limit() {
    if (const char* env = std::getenv("QDILOG_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs fn(i) for i in [0, n), possibly on several threads.  fn must be pure
/// up to writing into its own index slot, so the result is deterministic.
template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
    unsigned workers = parallel_limit();
    if (workers <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace qdilog
