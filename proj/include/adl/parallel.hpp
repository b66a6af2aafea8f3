#ifndef ADL_PARALLEL_HPP
#define ADL_PARALLEL_HPP

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adl {

/* Execution switch for the enumeration kernels.  Every parallel kernel has
   a serial twin used as the reference in tests and benchmarks. */
enum class Exec { serial, parallel };

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/* OpenMP-backed chunked loop over [begin, end).  The body must be safe to
   run concurrently on disjoint indices; merging is the caller's business. */
template <typename F>
void parallel_for(int64_t begin, int64_t end, Exec exec, F&& body) {
  if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t i = begin; i < end; ++i) body(i);
  } else {
    for (int64_t i = begin; i < end; ++i) body(i);
  }
}

}  // namespace adl

#endif
