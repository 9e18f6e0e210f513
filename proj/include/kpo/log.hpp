#pragma once

#include <functional>
#include <string_view>

namespace kpo {

enum class LogLevel { Warning, Error };

using LogHandler = std::function<void(LogLevel, std::string_view)>;

/// Route diagnostics (truncation warnings, failed sweep points). The default
/// handler writes "warning: ..." or "error: ..." lines to stderr. Returns the
/// previous handler.
LogHandler set_log_handler(LogHandler handler);

void warn(std::string_view message);
void log_error(std::string_view message);

}  // namespace kpo
