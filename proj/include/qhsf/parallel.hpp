#pragma once

/**
 * @file parallel.hpp
 * @brief Deterministic fork-join helper: each index writes only its own output slot,
 *        so results never depend on scheduling. Reductions are done serially by callers.
 */

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qhsf {

inline unsigned worker_count() {
    if (const char* env = std::getenv("QHSF_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for i in [0, n); exceptions are rethrown on the caller's thread.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned nt = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned w = 0; w < nt; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += nt) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace qhsf
