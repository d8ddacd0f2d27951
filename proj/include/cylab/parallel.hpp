#ifndef CYLAB_PARALLEL_HPP
#define CYLAB_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cylab {

// Process-wide worker count for the OpenMP kernels. Results are required to
// be byte-identical for any value; this only controls speed.
int worker_count();
void set_worker_count(int n);

// Runs f(i) for i in [0, n). With one worker (or without OpenMP) this is the
// plain serial loop; otherwise iterations are distributed but f must only
// write to per-index slots so the merged result is order-independent.
template <typename F>
void parallel_for(size_t n, F&& f) {
#ifdef _OPENMP
    int w = worker_count();
    if (w > 1 && n > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(w)
        for (long long i = 0; i < static_cast<long long>(n); ++i) f(static_cast<size_t>(i));
        return;
    }
#endif
    for (size_t i = 0; i < n; ++i) f(i);
}

}  // namespace cylab

#endif
