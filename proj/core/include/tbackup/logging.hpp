#pragma once

#include <string_view>

namespace tbackup {

/// Sets the library log level: trace, debug, info, warn, error, off.
/// Unknown names leave the level unchanged and return false.
bool set_log_level(std::string_view level);

/// Reads TB_LOG from the environment; default is warn.
void configure_logging_from_env();

}  // namespace tbackup
