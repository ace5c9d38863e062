#pragma once
// Minimal thread-pool-free parallel loop used for embarrassingly parallel
// sweeps over grid nodes.  The worker count is capped by the SPECMAP_THREADS
// environment variable (1 → fully serial); default is the hardware count.

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace specmap {

// Worker budget: max(1, min(SPECMAP_THREADS, hardware_concurrency)).
int thread_budget();

namespace detail {
void parallel_for_impl(int begin, int end,
                       const std::function<void(int)>& body);
}

// Calls body(i) for i in [begin, end), splitting the range into contiguous
// chunks across the worker budget.  Exceptions from workers are rethrown
// on the calling thread (first one wins).
template <class F>
void parallel_for(int begin, int end, F&& body) {
  detail::parallel_for_impl(begin, end, std::function<void(int)>(body));
}

}  // namespace specmap
