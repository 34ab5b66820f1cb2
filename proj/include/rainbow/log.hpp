#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace rainbow {

// Verbosity comes from RAINBOW_KIT_LOG: "info" or "debug" (anything else,
// including unset, is quiet). Diagnostics go to stderr; stdout stays clean
// for machine-readable results.
inline int log_level() {
    static const int level = [] {
        const char* v = std::getenv("RAINBOW_KIT_LOG");
        if (!v) return 0;
        std::string s(v);
        if (s == "debug" || s == "2") return 2;
        if (s == "info" || s == "1") return 1;
        return 0;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[rainbow-kit] " << msg << "\n";
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[rainbow-kit:debug] " << msg << "\n";
}

}  // namespace rainbow
