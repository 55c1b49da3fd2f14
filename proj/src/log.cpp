// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#include "reach/log.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>

namespace reach {

int log_level() {
    static const int level = [] {
        const char* v = std::getenv("REACH_LOG");
        if (!v) return 0;
        if (std::strcmp(v, "debug") == 0) return 2;
        if (std::strcmp(v, "info") == 0) return 1;
        return 0;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[reach] " << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[reach] " << msg << '\n';
}

}  // namespace reach
