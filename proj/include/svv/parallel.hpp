#pragma once

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace svv {

// Worker count: explicit argument wins, then SVV_THREADS, then the OpenMP
// default. Results never depend on it; every kernel writes slot i of a
// preallocated output and reductions run serially in index order.
inline int resolve_threads(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SVV_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// OpenMP kernel over [0, n). Body must only touch per-index state.
template <typename F>
void parallel_for(long n, F&& body, int threads = 0) {
    const int nt = resolve_threads(threads);
#ifdef _OPENMP
    if (nt > 1) {
#pragma omp parallel for schedule(static) num_threads(nt)
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    (void)nt;
    for (long i = 0; i < n; ++i) body(i);
}

// Serial reference for the same contract; tests compare the two bitwise.
template <typename F>
void serial_for(long n, F&& body) {
    for (long i = 0; i < n; ++i) body(i);
}

}  // namespace svv
