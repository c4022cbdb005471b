#include "magnusforge/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace magnusforge::log {

namespace {

Level parse_env() {
  const char* raw = std::getenv("MAGNUSFORGE_LOG");
  if (raw == nullptr) return Level::error;
  const std::string v(raw);
  if (v == "debug") return Level::debug;
  if (v == "info") return Level::info;
  return Level::error;
}

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Level level() {
  static const Level lvl = parse_env();
  return lvl;
}

void write(Level lvl, std::string_view msg) {
  if (static_cast<int>(lvl) > static_cast<int>(level())) return;
  const char* tag = lvl == Level::error ? "error" : lvl == Level::info ? "info" : "debug";
  std::scoped_lock lock(sink_mutex());
  std::cerr << "[magnusforge:" << tag << "] " << msg << '\n';
}

}  // namespace magnusforge::log
