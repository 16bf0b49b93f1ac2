#include "qdetect/errors.hpp"

namespace qdetect {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::PriorsInvalid: return "PriorsInvalid";
    case ErrorCode::SpanDeficient: return "SpanDeficient";
    case ErrorCode::ConditionNotMet: return "ConditionNotMet";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::GeneratorsNotGu: return "GeneratorsNotGu";
    case ErrorCode::NotPhaseCommuting: return "NotPhaseCommuting";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::RecoveryInfeasible: return "RecoveryInfeasible";
  }
  return "Unknown";
}

bool Error::is_numerical() const noexcept {
  switch (code_) {
    case ErrorCode::NoConvergence:
    case ErrorCode::Singular:
    case ErrorCode::MaxIterations:
    case ErrorCode::NumericalBreakdown:
    case ErrorCode::RecoveryInfeasible:
      return true;
    default:
      return false;
  }
}

}  // namespace qdetect
