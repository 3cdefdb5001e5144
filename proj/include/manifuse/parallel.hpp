#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace manifuse::par {

// Thread cap: min(hardware, MANIFUSE_THREADS). Always >= 1.
inline int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("MANIFUSE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

// Static contiguous partition of [0, n). Each worker writes only its own
// output cells, so the result is identical for any thread count.
template <class F>
void parallel_for(std::size_t n, F&& body) {
    const int nthreads = max_threads();
    if (nthreads <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t chunk = (n + nthreads - 1) / nthreads;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(nthreads));
    for (int w = 0; w < nthreads; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        if (lo >= n) break;
        const std::size_t hi = std::min(n, lo + chunk);
        workers.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : workers) t.join();
}

} // namespace manifuse::par
