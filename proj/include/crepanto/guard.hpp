#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "crepanto/exact.hpp"

namespace crepanto {

class GuardExceeded : public DomainError {
public:
  using DomainError::DomainError;
};

// Desk-scale limits. CREPANTO_GUARD=off disables them, CREPANTO_GUARD=k scales them by k.
std::optional<std::size_t> guard_limit(std::size_t default_value);

void check_guard(std::size_t value, std::size_t default_value, const std::string& what);

}  // namespace crepanto
