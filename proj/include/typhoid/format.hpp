#pragma once

#include <cstdio>
#include <string>

namespace typhoid {

/// Shortest-faithful decimal form: parses back to the identical double.
inline std::string format17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace typhoid
