#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hhsforge {

// Worker count: HHSFORGE_JOBS if set and positive, else hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("HHSFORGE_JOBS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

// Runs body(i) for i in [0, n) on up to worker_count() threads.
// Results are written by index, so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    unsigned jobs = std::min<std::size_t>(worker_count(), n == 0 ? 1 : n);
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += jobs) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

template <class T, class F>
T parallel_max(std::size_t n, T init, F&& f) {
    std::vector<T> part(n, init);
    parallel_for(n, [&](std::size_t i) { part[i] = f(i); });
    T best = init;
    for (const T& v : part) best = std::max(best, v);
    return best;
}

}  // namespace hhsforge
