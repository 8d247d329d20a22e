#include "otm/error.hpp"

namespace otm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::IrreducibilityUndecided: return "IrreducibilityUndecided";
    case ErrorCode::SignatureUnsupported: return "SignatureUnsupported";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NoUnitFound: return "NoUnitFound";
    case ErrorCode::WrongGeneratorCount: return "WrongGeneratorCount";
    case ErrorCode::NotTotallyPositive: return "NotTotallyPositive";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::StepOutOfRange: return "StepOutOfRange";
    case ErrorCode::DiskLeavesDomain: return "DiskLeavesDomain";
    case ErrorCode::CurveLeavesDomain: return "CurveLeavesDomain";
    case ErrorCode::IdentityElement: return "IdentityElement";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorCode::SignUndecidable: return "SignUndecidable";
    case ErrorCode::EmbeddingDegenerate: return "EmbeddingDegenerate";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::InverseNotInOrder: return "InverseNotInOrder";
    case ErrorCode::LeftHalfSpace: return "LeftHalfSpace";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::CrossCheckMismatch:
    case ErrorCode::SignUndecidable:
    case ErrorCode::EmbeddingDegenerate:
    case ErrorCode::PrecisionExhausted:
      return 3;
    case ErrorCode::InverseNotInOrder:
    case ErrorCode::LeftHalfSpace:
      return 1;
    default:
      return 2;
  }
}

}  // namespace otm
