#pragma once

#include <cstddef>
#include <functional>

namespace tmdyn {

/// TM_THREADS when set to a positive integer, else hardware concurrency (>= 1).
std::size_t default_thread_count();

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Work is handed out
/// by an atomic counter; the first exception thrown is rethrown after all
/// workers join.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace tmdyn
