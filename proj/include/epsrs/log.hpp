#pragma once

#include <string_view>

namespace epsrs {

enum class LogLevel { off = 0, warning = 1, debug = 2 };

/// Threshold read from the EPSRS_LOG environment variable ("warning" or "debug");
/// logging is off when it is unset.
LogLevel log_level() noexcept;

/// Writes one line to stderr if `level` is enabled.
void log_message(LogLevel level, std::string_view message);

}  // namespace epsrs
