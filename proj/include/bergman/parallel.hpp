#pragma once

// Minimal shared-counter thread pool. parallel_for(n, fn) runs fn(0..n-1)
// across a few worker threads; tasks must be independent. Nested calls run
// serially (a thread_local depth guard), so library code can parallelize at
// whatever level it likes without oversubscribing.
//
// Determinism contract: callers write results into preallocated slots keyed
// by index, so the schedule never affects output bytes.

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bergman {

inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return hw > 8 ? 8u : hw;
}

namespace detail {
inline thread_local int parallel_depth = 0;
}

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    if (n == 0) return;
    unsigned workers = worker_count();
    if (detail::parallel_depth > 0 || workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr fail;
    std::mutex fail_mu;
    auto body = [&] {
        detail::parallel_depth++;
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(fail_mu);
                if (!fail) fail = std::current_exception();
                break;
            }
        }
        detail::parallel_depth--;
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    if (fail) std::rethrow_exception(fail);
}

}  // namespace bergman
