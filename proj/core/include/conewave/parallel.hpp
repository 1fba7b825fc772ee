#ifndef CONEWAVE_PARALLEL_HPP
#define CONEWAVE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace conewave {

// Number of worker threads used by data-parallel loops.  Defaults to the
// hardware concurrency; the CONEWAVE_THREADS environment variable caps it.
int thread_count();

// Runs fn(i) for i in [0, n).  Work items must write only to their own
// output slots; results are then bit-identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace conewave

#endif
