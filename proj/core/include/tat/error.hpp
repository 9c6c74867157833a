#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tat {

/// Thrown when an input violates an operation's preconditions.
/// `field()` names the offending input so callers can report it.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace tat
