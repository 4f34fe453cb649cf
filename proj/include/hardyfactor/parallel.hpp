#pragma once

#include <cstddef>
#include <functional>

namespace hardyfactor {

// Worker count from HARDYFACTOR_THREADS; 0 or unset means hardware
// concurrency.
unsigned worker_count();

// Calls body(i) for i in [0, n) on up to worker_count() threads. Bodies must
// only write to their own slot; the first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hardyfactor
