#pragma once

#include <spdlog/spdlog.h>

#define TB_LOG_TRACE(...) SPDLOG_LOGGER_TRACE(spdlog::default_logger_raw(), __VA_ARGS__)
#define TB_LOG_DEBUG(...) spdlog::debug(__VA_ARGS__)
#define TB_LOG_INFO(...) spdlog::info(__VA_ARGS__)
#define TB_LOG_WARN(...) spdlog::warn(__VA_ARGS__)
