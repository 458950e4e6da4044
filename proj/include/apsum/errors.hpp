#pragma once

#include <stdexcept>
#include <string>

namespace apsum {

/// Raised when an input fails validation. `field()` names the offending
/// config key or argument so callers can report it.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Raised when a numerical routine cannot meet its tolerance. Carries the
/// achieved error estimate and the budget it was compared against.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& message, double estimate, double budget)
      : std::runtime_error(message), estimate_(estimate), budget_(budget) {}

  double estimate() const noexcept { return estimate_; }
  double budget() const noexcept { return budget_; }

 private:
  double estimate_;
  double budget_;
};

}  // namespace apsum
