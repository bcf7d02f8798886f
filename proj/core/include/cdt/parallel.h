#ifndef CDT_PARALLEL_H_
#define CDT_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace cdt {

// Worker count: hardware concurrency, capped by the CDT_AUDIT_THREADS
// environment variable and by `requested` when positive. Always >= 1.
int ResolveThreadCount(int requested = 0);

// Runs body(i) for i in [0, count) on up to `threads` workers. Work items are
// claimed dynamically; callers write results into per-index slots so the
// outcome does not depend on scheduling.
void ParallelFor(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& body);

}  // namespace cdt

#endif  // CDT_PARALLEL_H_
