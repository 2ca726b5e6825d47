#pragma once

#include <cstddef>
#include <functional>

namespace randrk {

// Worker count: RANDRK_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

// Calls body(i) for i in [0, count) on up to worker_count() threads. The first
// exception thrown by any body (lowest index wins) is rethrown after join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace randrk
