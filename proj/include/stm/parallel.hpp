#pragma once

#include <cstddef>
#include <functional>

namespace stm {

/// Worker count used by internally parallel operations. Defaults to the
/// hardware concurrency; STM_THREADS overrides it (STM_THREADS=1 disables
/// parallelism entirely).
int thread_count();
void set_thread_count(int n);

/// Runs fn(i) for i in [0, n). Work is chunked over thread_count() workers.
/// Callers are responsible for making the combined result order-independent;
/// every parallel site in this library produces results that are bit-identical
/// to the sequential execution.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace stm
