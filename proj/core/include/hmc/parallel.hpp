/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <cstddef>
#include <functional>

namespace hmc {

/* Runs body(i) for i in [0, n) on a small worker pool.  Every index is
 * visited exactly once; callers store per-index results and combine them
 * in index order. */
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

unsigned worker_count();

} // namespace hmc
