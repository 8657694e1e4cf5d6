#pragma once

#include <cstdint>
#include <functional>

namespace srm::parallel {

/// Caps worker threads for batch evaluations (sweeps, tables, sample
/// batches). 0 means use the hardware concurrency. Results are always
/// placed by index, so outputs do not depend on the thread count.
void set_max_threads(int n);
int max_threads();

/// Runs fn(0..n-1), possibly across threads. Rethrows the first
/// exception after all workers join.
void for_index(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace srm::parallel
