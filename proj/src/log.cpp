#include "mmm/log.hpp"

#include <cstdlib>
#include <iostream>

namespace mmm::log {

Level threshold() {
  static const Level cached = [] {
    const char* env = std::getenv("MMM_LOG");
    if (env == nullptr) return Level::Warn;
    const std::string v(env);
    if (v == "error") return Level::Error;
    if (v == "warn") return Level::Warn;
    if (v == "info") return Level::Info;
    if (v == "debug") return Level::Debug;
    return Level::Warn;
  }();
  return cached;
}

void write(Level level, const std::string& message) {
  if (level > threshold()) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::cerr << "[mmm:" << names[static_cast<int>(level)] << "] " << message
            << "\n";
}

}  // namespace mmm::log
