#pragma once

#include <stdexcept>
#include <string>

namespace svbev {

/// Fatal problems in configuration / input documents. These abort the load,
/// carry a machine-checkable kind plus a human message naming the offender.
class ConfigError : public std::runtime_error {
 public:
  enum class Kind {
    ParseError,
    BadFormat,
    MissingField,
    UnknownField,
    BadValue,
    MissingChannel,
    DuplicateChannel,
    NonOrthonormalRotation,
    NonMonotoneDistortion,
    UnknownVehicleType,
  };

  ConfigError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Frame-level orchestration failures (caller contract violations).
class PipelineError : public std::runtime_error {
 public:
  enum class Kind { MismatchedFrameIds };

  PipelineError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace svbev
