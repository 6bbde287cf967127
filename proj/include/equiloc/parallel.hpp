#pragma once

namespace equiloc {

// Thread count for parallel regions: EQUILOC_THREADS if set and positive, else the OpenMP default.
int thread_count();
// Overrides the environment for the current process; 0 restores the default.
void set_thread_count(int n);

}  // namespace equiloc
