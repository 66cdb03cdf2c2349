#include "rootmax/parallel.hpp"

#include <cstdlib>

namespace rootmax {

namespace {
int resolve_env_cap() {
  if (const char* env = std::getenv("ROOTMAX_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;
}
int g_cap = -1;  // -1: unresolved, 0: hardware default
}  // namespace

void set_thread_cap(int threads) {
  g_cap = threads > 0 ? threads : 0;
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
}

int thread_cap() {
  if (g_cap < 0) {
    g_cap = resolve_env_cap();
#ifdef _OPENMP
    if (g_cap > 0) omp_set_num_threads(g_cap);
#endif
  }
  return g_cap;
}

}  // namespace rootmax
