#ifndef GRIDMRF_THREADS_HPP
#define GRIDMRF_THREADS_HPP

#include <functional>

namespace gridmrf {

// Worker count used for internal parallelism (column solves, replicate
// loops). Defaults to GRIDMRF_THREADS if set, else hardware concurrency.
int default_threads();
void set_default_threads(int n);

// Runs body(i) for i in [0, count) over at most `workers` threads.
// Results must be written to disjoint locations by the body.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

}  // namespace gridmrf

#endif
