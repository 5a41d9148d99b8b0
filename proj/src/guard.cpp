#include "crepanto/guard.hpp"

#include <cstdlib>
#include <string>

namespace crepanto {

std::optional<std::size_t> guard_limit(std::size_t default_value) {
  const char* env = std::getenv("CREPANTO_GUARD");
  if (env == nullptr || *env == '\0') return default_value;
  std::string s(env);
  if (s == "off" || s == "0") return std::nullopt;
  char* end = nullptr;
  unsigned long k = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || k == 0) return default_value;
  return default_value * k;
}

void check_guard(std::size_t value, std::size_t default_value, const std::string& what) {
  auto lim = guard_limit(default_value);
  if (lim && value > *lim)
    throw GuardExceeded(what + " exceeds desk-scale guard (" + std::to_string(value) + " > " +
                        std::to_string(*lim) + ")");
}

}  // namespace crepanto
