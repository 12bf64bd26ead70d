#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace parallax {

// Verbosity from PARALLAX_LOG: 0 = warnings only (default), 1 = info, 2 = debug.
inline int log_level() {
    static int level = [] {
        const char* env = std::getenv("PARALLAX_LOG");
        return env ? std::atoi(env) : 0;
    }();
    return level;
}

inline void log_warn(const std::string& msg) { std::fprintf(stderr, "[parallax] warning: %s\n", msg.c_str()); }

inline void log_info(const std::string& msg) {
    if (log_level() >= 1) std::fprintf(stderr, "[parallax] %s\n", msg.c_str());
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::fprintf(stderr, "[parallax] debug: %s\n", msg.c_str());
}

} // namespace parallax
