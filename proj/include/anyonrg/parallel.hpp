#pragma once

#include <cstddef>
#include <functional>

namespace anyonrg {

/// Worker count: hardware concurrency capped by ANYONRG_THREADS (>= 1).
unsigned worker_count();

/// Calls fn(i) for i in [0, count) across worker_count() threads. Each index
/// is visited exactly once; results must be written to disjoint locations.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace anyonrg
