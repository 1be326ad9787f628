#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qgsw {

namespace detail {
inline std::atomic<int>& thread_setting() {
    static std::atomic<int> n{1};
    return n;
}
}  // namespace detail

inline void set_thread_count(int n) { detail::thread_setting().store(std::max(1, n)); }
inline int thread_count() { return detail::thread_setting().load(); }

// Split [0, n) into contiguous blocks and run fn(begin, end) on each.
// Each index is handled by exactly one call, so results do not depend on the
// thread count as long as fn writes only to its own indices.
template <class F>
void parallel_for(size_t n, F&& fn) {
    const size_t t = std::min<size_t>(size_t(thread_count()), n);
    if (t <= 1) {
        if (n > 0) fn(size_t(0), n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    const size_t chunk = (n + t - 1) / t;
    for (size_t k = 0; k < t; ++k) {
        const size_t b = k * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, k, b, e] {
            try {
                fn(b, e);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace qgsw
