#pragma once

#include <stdexcept>
#include <string>

namespace amoebot {

// Rejected problem instances and malformed configs. Each kind maps to one
// validation rule so callers and tests can tell them apart.
class ValidationError : public std::runtime_error {
public:
  enum class Kind {
    DisconnectedShape,
    EmptyRoots,
    RootOutsideShape,
    NonPositiveParameter,
    DemandExceedsCapacity,
    BadConfig,
    BadSchedule,
  };

  ValidationError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

// Broken engine invariants (battery bounds, conservation, forest acyclicity,
// activation of a crashed particle). These are bugs, not user errors.
class EngineFault : public std::logic_error {
public:
  explicit EngineFault(const std::string& what) : std::logic_error(what) {}
};

}  // namespace amoebot
