#include "degseq/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace degseq {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("DEGSEQ_LOG");
        const std::string v = env ? env : "";
        if (v == "off" || v == "0") return LogLevel::off;
        if (v == "info") return LogLevel::info;
        if (v == "debug") return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

void log_message(LogLevel level, std::string_view msg) {
    if (level > log_level()) return;
    static std::mutex mu;
    static constexpr const char* names[] = {"", "warn", "info", "debug"};
    std::lock_guard lock(mu);
    std::cerr << "[degseq " << names[static_cast<int>(level)] << "] " << msg << '\n';
}

}  // namespace degseq
