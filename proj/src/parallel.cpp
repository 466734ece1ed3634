#include "copclust/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace copclust {

int worker_count() {
  if (const char* env = std::getenv("COPCLUST_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return omp_get_max_threads();
}

void configure_workers_from_env() { omp_set_num_threads(worker_count()); }

}  // namespace copclust
