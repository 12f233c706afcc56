#include "nbts/error.hpp"

namespace nbts {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidBehavior: return "InvalidBehavior";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::WrongPartyCount: return "WrongPartyCount";
    case ErrorKind::WeightError: return "WeightError";
    case ErrorKind::ScenarioMismatch: return "ScenarioMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::NotInPolytope: return "NotInPolytope";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::UnsupportedScenario: return "UnsupportedScenario";
    case ErrorKind::NotDeterministic: return "NotDeterministic";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::InternalContradiction: return "InternalContradiction";
    case ErrorKind::IndexCollision: return "IndexCollision";
    case ErrorKind::WrongWireSet: return "WrongWireSet";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NonScalarResult: return "NonScalarResult";
    case ErrorKind::NotPositive: return "NotPositive";
  }
  return "Unknown";
}

}  // namespace nbts
