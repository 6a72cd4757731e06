#pragma once

#include <cassert>
#include <utility>
#include <variant>

namespace svbev {

/// Recoverable per-point / per-target failures. These are expected data
/// conditions, not programming errors, so they travel as values.
enum class Err {
  AngleOutOfFov,
  RadiusOutOfRange,
  BehindCamera,
  OutOfFov,
  RayParallelToGround,
  RayHitsAboveHorizon,
  WheelsCoincident,
  PointsCoincident,
  DegenerateSide,
  MissingRegressedHeading,
  InsufficientGeometry,
  ConflictingGeometry,
  UnknownVehicleType,
};

const char* err_name(Err e);

template <typename T>
class Result {
 public:
  Result(T value) : data_(std::move(value)) {}
  Result(Err e) : data_(e) {}

  bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    assert(ok());
    return std::get<T>(data_);
  }
  T& value() {
    assert(ok());
    return std::get<T>(data_);
  }
  Err error() const {
    assert(!ok());
    return std::get<Err>(data_);
  }

 private:
  std::variant<T, Err> data_;
};

}  // namespace svbev
