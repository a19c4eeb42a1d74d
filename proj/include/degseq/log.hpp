#pragma once

#include <string_view>

namespace degseq {

enum class LogLevel { off = 0, warn = 1, info = 2, debug = 3 };

/// Read once from DEGSEQ_LOG (off, warn, info, debug); defaults to warn.
LogLevel log_level();

void log_message(LogLevel level, std::string_view msg);

inline void log_warn(std::string_view msg) { log_message(LogLevel::warn, msg); }
inline void log_info(std::string_view msg) { log_message(LogLevel::info, msg); }
inline void log_debug(std::string_view msg) { log_message(LogLevel::debug, msg); }

}  // namespace degseq
