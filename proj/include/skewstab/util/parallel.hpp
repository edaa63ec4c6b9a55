#pragma once

#include <cstddef>
#include <functional>

namespace skewstab {

/// Worker count from SKEWSTAB_THREADS, else hardware concurrency (at least 1).
int thread_count();

/// Runs body(i) for i in [0, n). Each index is touched by exactly one worker;
/// callers write into per-index slots and reduce in index order afterwards.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace skewstab
