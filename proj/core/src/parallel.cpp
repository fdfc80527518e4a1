/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hmc {

unsigned worker_count()
{
	unsigned hw = std::thread::hardware_concurrency();
	return std::clamp(hw, 1u, 16u);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body)
{
	unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
	if (workers <= 1) {
		for (std::size_t i = 0; i < n; ++i)
			body(i);
		return;
	}
	std::atomic<std::size_t> next{0};
	std::exception_ptr failure;
	std::mutex failure_mu;
	auto run = [&] {
		for (;;) {
			std::size_t i = next.fetch_add(1);
			if (i >= n)
				return;
			try {
				body(i);
			} catch (...) {
				std::lock_guard lock(failure_mu);
				if (!failure)
					failure = std::current_exception();
				next = n;
			}
		}
	};
	std::vector<std::thread> pool;
	for (unsigned w = 1; w < workers; ++w)
		pool.emplace_back(run);
	run();
	for (auto &t : pool)
		t.join();
	if (failure)
		std::rethrow_exception(failure);
}

} // namespace hmc
