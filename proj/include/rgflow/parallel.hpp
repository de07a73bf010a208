#pragma once

#include <cstddef>
#include <functional>

namespace rgflow {

/// Worker count: RGFLOW_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count). Each index is handled by exactly one
/// worker, so results written to per-index slots are deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rgflow
