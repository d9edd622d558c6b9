#ifndef NELSON_PARALLEL_HPP
#define NELSON_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace nelson {

// Process-wide worker count used by the data-parallel loops. The CLI sets it
// from --threads; 0 means hardware concurrency.
inline int& thread_count() {
    static int n = 0;
    return n;
}

inline int effective_threads() {
    int n = thread_count();
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

// Runs f(i) for i in [0, n). Work is chunked over threads; callers that
// reduce must write per-index results into preallocated storage and reduce
// sequentially afterwards, so sums are independent of the thread count.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    int nt = effective_threads();
    if (nt == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(nt, n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::size_t chunk = (n + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace nelson

#endif
