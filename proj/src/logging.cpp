#include "fredproj/logging.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace fredproj {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("FREDPROJ_LOG");
    if (env == nullptr) return LogLevel::Error;
    const std::string s(env);
    if (s == "debug") return LogLevel::Debug;
    if (s == "info") return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

namespace {
void emit(LogLevel at, const char* tag, const std::string& msg) {
  if (log_level() >= at) std::cerr << "[fredproj " << tag << "] " << msg << "\n";
}
}  // namespace

void log_error(const std::string& msg) { emit(LogLevel::Error, "error", msg); }
void log_info(const std::string& msg) { emit(LogLevel::Info, "info", msg); }
void log_debug(const std::string& msg) { emit(LogLevel::Debug, "debug", msg); }

}  // namespace fredproj
