#pragma once

#include <cstddef>
#include <functional>

namespace isoconv {

/// Worker count: hardware concurrency, capped by ISOCONV_THREADS when set.
unsigned worker_count();

/// Runs fn(i) for i in [0, count). Each index is processed exactly once;
/// callers write results to per-index slots so output is independent of
/// scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace isoconv
