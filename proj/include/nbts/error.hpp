#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nbts {

enum class ErrorKind {
  InvalidArgument,
  ParseError,
  InvalidBehavior,
  IndexOutOfRange,
  WrongPartyCount,
  WeightError,
  ScenarioMismatch,
  DimensionMismatch,
  Unbounded,
  Empty,
  NotInPolytope,
  CapacityExceeded,
  UnsupportedScenario,
  NotDeterministic,
  PreconditionFailed,
  InternalContradiction,
  IndexCollision,
  WrongWireSet,
  ZeroDenominator,
  NonScalarResult,
  NotPositive,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure in the library is reported through this type; `kind`
// is stable and machine-readable, `detail` is free text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(std::move(detail)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace nbts
