#pragma once

#include <string_view>

namespace magnusforge::log {

enum class Level { error = 0, info = 1, debug = 2 };

// Verbosity is read once from the MAGNUSFORGE_LOG environment variable
// ("error", "info" or "debug"; default "error"). Messages go to stderr.
Level level();

void write(Level lvl, std::string_view msg);

inline void error(std::string_view msg) { write(Level::error, msg); }
inline void info(std::string_view msg) { write(Level::info, msg); }
inline void debug(std::string_view msg) { write(Level::debug, msg); }

}  // namespace magnusforge::log
