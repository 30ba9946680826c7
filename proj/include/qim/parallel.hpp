#pragma once

#include <cstddef>
#include <functional>

namespace qim {

// Runs body(i) for i in [0, count). With workers <= 1 the loop is serial;
// otherwise tasks are pulled from a shared atomic counter. Callers must make
// each task write only to its own output slot, which keeps results identical
// at any worker count. The first exception thrown by a task is rethrown on
// the calling thread after all workers join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

// Number of hardware threads, at least 1.
int hardware_workers();

}  // namespace qim
