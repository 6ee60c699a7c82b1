#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plsum {

// jobs == 0 means "all hardware threads", jobs >= 1 caps the worker count.
inline int effective_jobs(int jobs) {
#ifdef _OPENMP
  if (jobs <= 0) return omp_get_max_threads();
  return jobs;
#else
  (void)jobs;
  return 1;
#endif
}

}  // namespace plsum
