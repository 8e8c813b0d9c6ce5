#pragma once

#include <cstddef>
#include <functional>

namespace qgs {

/// Worker count: QGS_THREADS if set and positive, otherwise the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Work is split in contiguous blocks, so
/// results written by index are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qgs
