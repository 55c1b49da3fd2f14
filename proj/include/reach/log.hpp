// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace reach {

// Verbosity from REACH_LOG: quiet (default), info, debug.
int log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace reach
