#include "equiloc/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace equiloc {

namespace {
std::atomic<int> override_count{0};

int from_env() {
  const char* v = std::getenv("EQUILOC_THREADS");
  if (!v) return 0;
  try {
    int n = std::stoi(v);
    return n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}
}  // namespace

int thread_count() {
  if (int n = override_count.load(); n > 0) return n;
  static const int env = from_env();
  return env > 0 ? env : omp_get_max_threads();
}

void set_thread_count(int n) { override_count.store(n > 0 ? n : 0); }

}  // namespace equiloc
