#ifndef HYDRA_PARALLEL_HPP_
#define HYDRA_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace hydra {

/// Worker count: HYDRA_THREADS env var caps it, 0 or unset means hardware
/// concurrency. Always at least 1.
int worker_count();

/// Run fn(index, worker) for every index in [0, n). Work is pulled from a
/// shared counter, so callers must write results into per-index slots to
/// stay deterministic. `worker` indexes per-thread scratch state.
void parallel_for(std::size_t n, const std::function<void(std::size_t, int)>& fn);

}  // namespace hydra

#endif  // HYDRA_PARALLEL_HPP_
