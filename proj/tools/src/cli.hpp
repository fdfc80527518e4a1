/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hmc::cli {

enum Exit : int {
	kOk = 0,
	kFailed = 1,
	kUsage = 2,
	kInconclusive = 3,
	kResource = 4,
};

/* args excludes the program name */
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace hmc::cli
