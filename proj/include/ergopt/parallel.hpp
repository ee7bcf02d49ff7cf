#ifndef ERGOPT_PARALLEL_HPP
#define ERGOPT_PARALLEL_HPP

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ergopt {

// Runs body(i) for i in [0,n). Iterations must write disjoint state so the
// result does not depend on scheduling. Small ranges stay serial (the
// per-region barrier costs more than a few thousand cheap iterations); the
// first exception thrown inside a parallel region is rethrown after the loop.
template <class F>
void parallel_for(int n, F&& body, int grain = 4096) {
#ifdef _OPENMP
  if (n >= grain && omp_get_max_threads() > 1) {
    std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical
        {
          if (!eptr) eptr = std::current_exception();
        }
      }
    }
    if (eptr) std::rethrow_exception(eptr);
    return;
  }
#else
  (void)grain;
#endif
  for (int i = 0; i < n; ++i) body(i);
}

}  // namespace ergopt

#endif  // ERGOPT_PARALLEL_HPP
