#include "epsrs/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace epsrs {

LogLevel log_level() noexcept {
    const char* env = std::getenv("EPSRS_LOG");
    if (env == nullptr) return LogLevel::off;
    const std::string_view v(env);
    if (v == "debug") return LogLevel::debug;
    if (v == "warning" || v == "warn") return LogLevel::warning;
    return LogLevel::off;
}

void log_message(LogLevel level, std::string_view message) {
    if (level == LogLevel::off || static_cast<int>(level) > static_cast<int>(log_level())) return;
    const char* tag = level == LogLevel::debug ? "debug" : "warning";
    std::fprintf(stderr, "[epsrs %s] %.*s\n", tag, static_cast<int>(message.size()), message.data());
}

}  // namespace epsrs
