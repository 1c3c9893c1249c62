#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace coordsynth {

/// Runs body(0..n-1). With jobs <= 1 (or without OpenMP) the loop is the
/// plain serial reference; otherwise iterations are spread over `jobs`
/// threads. Each body writes only its own slot, so results do not depend on
/// scheduling. The first exception by index is rethrown after the loop.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
#ifdef _OPENMP
  if (jobs > 1 && n > 1) {
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    return;
  }
#else
  (void)jobs;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

/// True when the library was built with OpenMP.
constexpr bool parallel_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace coordsynth
