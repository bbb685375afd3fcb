#pragma once

// Execution policy for the data-parallel kernels (exhaustive scans, pair checks,
// globality sweeps). Every kernel keeps a serial path; tests assert both paths
// produce identical results and the benchmark target compares their timings.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skewlie {

enum class Exec { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs body(i) for i in [0, count). Under Exec::parallel iterations run on an OpenMP
/// team; body must only write to per-index state. The exception from the lowest
/// failing index is rethrown after the loop, as the serial path would.
template <typename Body>
void parallel_for(std::size_t count, Exec exec, Body&& body) {
  if (exec == Exec::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::size_t failed_at = std::numeric_limits<std::size_t>::max();
  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t k = 0; k < total; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      body(i);
    } catch (...) {
#pragma omp critical(skewlie_parallel_for_error)
      {
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace skewlie
