#pragma once

#include <cstddef>
#include <functional>

namespace vanhove {

/// Worker count: VANHOVE_THREADS if set and positive, else the hardware
/// concurrency (0 in the variable means auto).
unsigned thread_count();

/// Runs body(i) for i in [0, n), split into contiguous chunks. Callers write
/// into per-index slots and reduce afterwards, so results never depend on
/// the schedule. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace vanhove
