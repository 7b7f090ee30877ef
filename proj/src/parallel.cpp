#include "qms/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef QMS_HAVE_OPENMP
#include <omp.h>
#endif

namespace qms::parallel {

namespace {
Mode g_mode =
#ifdef QMS_HAVE_OPENMP
    Mode::OpenMP;
#else
    Mode::Serial;
#endif
}  // namespace

Mode mode() { return g_mode; }
void set_mode(Mode m) { g_mode = m; }

int max_threads() {
  static const int cap = [] {
    if (const char* env = std::getenv("LINDBLAD_LAB_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
#ifdef QMS_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
  }();
  return cap;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
#ifdef QMS_HAVE_OPENMP
  if (g_mode == Mode::OpenMP && n > 1) {
    const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace qms::parallel
