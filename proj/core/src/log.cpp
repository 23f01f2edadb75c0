#include "tbackup/logging.hpp"

#include <cstdlib>
#include <string>

#include "log.hpp"

namespace tbackup {

bool set_log_level(std::string_view level) {
  auto lvl = spdlog::level::from_str(std::string(level));
  if (lvl == spdlog::level::off && level != "off") return false;
  spdlog::set_level(lvl);
  return true;
}

void configure_logging_from_env() {
  spdlog::set_level(spdlog::level::warn);
  spdlog::set_pattern("[%l] %v");
  if (const char* env = std::getenv("TB_LOG")) set_log_level(env);
}

}  // namespace tbackup
