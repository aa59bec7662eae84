#pragma once

#include <functional>

namespace hexcurv {

// Worker count from HEXCURV_THREADS (0 or unset = hardware concurrency).
int thread_count();

// Runs body(i) for i in [0, n). Each index is processed exactly once; callers
// write into per-index slots and reduce in index order afterwards.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace hexcurv
