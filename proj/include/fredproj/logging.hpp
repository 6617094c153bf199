#pragma once

#include <string>

namespace fredproj {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

/// Level parsed from the FREDPROJ_LOG environment variable
/// (error|info|debug, default error). Evaluated once per process.
LogLevel log_level();

void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace fredproj
