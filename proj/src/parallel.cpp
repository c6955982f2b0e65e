#include "clusart/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace clusart {

namespace {
bool g_deterministic = false;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_num_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

void set_deterministic(bool on) {
  g_deterministic = on;
#ifdef _OPENMP
  omp_set_num_threads(on ? 1 : omp_get_num_procs());
#endif
}

bool deterministic() { return g_deterministic; }

}  // namespace clusart
