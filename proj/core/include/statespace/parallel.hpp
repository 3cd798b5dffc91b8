#pragma once

#include <cstddef>
#include <functional>

namespace statespace {

/// Worker count from STATESPACE_THREADS: unset means hardware concurrency,
/// 0 or 1 means sequential.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Each index must write only its own output
/// slot, so results do not depend on the worker count. The first exception
/// thrown (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace statespace
