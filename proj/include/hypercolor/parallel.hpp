#pragma once

#include <cstddef>
#include <functional>

namespace hypercolor {

/// Worker count: HYPERCOLOR_THREADS when set to a positive integer, else hardware concurrency.
std::size_t thread_count();

/// Overrides the worker count for the current process; 0 restores the environment default.
void set_thread_count(std::size_t threads);

/// Calls body(i) for every i in [0, count) across worker threads.
///
/// Work is handed out in contiguous chunks; body must only write to state owned by index i,
/// so the result never depends on the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace hypercolor
