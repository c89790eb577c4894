#include "hullscope/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace hullscope {

int thread_count() {
  const char* env = std::getenv("HULLSCOPE_THREADS");
  if (env != nullptr) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
      // unparsable values fall back to the OpenMP default
    }
  }
  return omp_get_max_threads();
}

}  // namespace hullscope
