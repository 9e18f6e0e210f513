#include "kpo/log.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace kpo {

namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

LogHandler& handler_slot() {
  static LogHandler h = [](LogLevel level, std::string_view msg) {
    std::cerr << (level == LogLevel::Error ? "error: " : "warning: ") << msg << '\n';
  };
  return h;
}

void emit(LogLevel level, std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (handler_slot()) handler_slot()(level, message);
}

}  // namespace

LogHandler set_log_handler(LogHandler handler) {
  std::lock_guard lock(handler_mutex());
  return std::exchange(handler_slot(), std::move(handler));
}

void warn(std::string_view message) { emit(LogLevel::Warning, message); }

void log_error(std::string_view message) { emit(LogLevel::Error, message); }

}  // namespace kpo
