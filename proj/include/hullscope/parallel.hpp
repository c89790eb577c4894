#pragma once

// OpenMP fan-out with a serial reference path.
//
// Every data-parallel kernel in the library takes an `Exec` argument. The
// serial path is the reference used by the tests; the parallel path must
// produce bit-identical results, which holds because each index writes only
// its own output slot and reductions are done afterwards in index order.

#include <cstddef>

namespace hullscope {

enum class Exec { serial, parallel };

/// Thread cap from HULLSCOPE_THREADS (0 or unset = OpenMP default).
int thread_count();

/// Calls f(i) for i in [0, n). Iterations must be independent.
template <class F>
void for_each_index(Exec exec, std::size_t n, F&& f) {
  if (exec == Exec::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
  for (long long i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
}

}  // namespace hullscope
