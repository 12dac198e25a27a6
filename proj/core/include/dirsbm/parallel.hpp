#pragma once

#include <functional>

namespace dirsbm {

/// Runs body(0) .. body(count-1) on up to `threads` workers. With
/// threads <= 1 the calls happen inline. The first exception thrown by a
/// body is rethrown after all workers join. Bodies must not share mutable
/// state; results should be written to per-index slots.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

/// Worker count from the DIRSBM_THREADS environment variable, falling back
/// to the hardware concurrency.
int default_thread_count();

}  // namespace dirsbm
