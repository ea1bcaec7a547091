#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace jumpcode {

// Runs f(i) for i in [0, n) across hardware threads. f must be safe to call
// concurrently for distinct i; the first exception thrown by any worker is
// rethrown on the calling thread after all workers join.
inline void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t)>& f) {
    if (n == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(hw == 0 ? 4 : hw, n));
    if (workers == 1) {
        for (std::uint64_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                std::uint64_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    f(i);
                } catch (...) {
                    if (!failed.exchange(true)) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(first_error);
}

}  // namespace jumpcode
