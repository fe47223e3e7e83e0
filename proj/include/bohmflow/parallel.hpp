#pragma once

#include <cstddef>
#include <functional>

namespace bohmflow {

/// Worker count: hardware concurrency, capped by BOHMFLOW_THREADS when set to a positive integer.
int worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Work is split into
/// contiguous blocks so results written by index do not depend on the thread count.
/// If any call throws, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace bohmflow
