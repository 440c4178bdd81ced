#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relcomm {

// Sweep driver for the embarrassingly parallel outer loops (seeded trials,
// placement candidates, random-instance campaigns). Each index must be
// independent and write only to its own slot, so serial and parallel
// execution produce identical results; tests pin that equivalence and the
// benchmark target compares the two. threads <= 1 runs the plain serial loop,
// which is also the build-time fallback without OpenMP.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
#ifdef _OPENMP
  if (threads > 1) {
    std::exception_ptr error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#else
  (void)threads;
#endif
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace relcomm
