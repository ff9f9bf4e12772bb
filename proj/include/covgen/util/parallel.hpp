//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_UTIL_PARALLEL_HPP
#define COVGEN_UTIL_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace covgen::util {

// Worker count: COVGEN_THREADS when set (clamped to >= 1), otherwise the
// hardware concurrency.
int thread_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; results
// must be written to pre-sized slots so the output order never depends on
// scheduling.
void parallel_for(size_t n, const std::function<void(size_t)> &fn);

}  // namespace covgen::util

#endif  // COVGEN_UTIL_PARALLEL_HPP
