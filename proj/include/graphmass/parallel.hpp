#pragma once

// Index-parallel evaluation with results stored by index, so reductions done
// afterwards in index order are independent of scheduling.

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace graphmass {

// GRAPHMASS_THREADS if set and positive, else the hardware concurrency.
int thread_count();

// fn(i) for i < count. Every task runs; afterwards the exception of the
// lowest failing index, if any, is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

// out[i] = fn(i).
std::vector<double> parallel_map(std::size_t count, const std::function<double(std::size_t)>& fn);

}  // namespace graphmass
