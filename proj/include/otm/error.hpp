#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace otm {

enum class ErrorCode {
  // input / configuration
  NotMonic,
  DegreeTooSmall,
  Reducible,
  IrreducibilityUndecided,
  SignatureUnsupported,
  NotAUnit,
  NoUnitFound,
  WrongGeneratorCount,
  NotTotallyPositive,
  FieldMismatch,
  StepOutOfRange,
  DiskLeavesDomain,
  CurveLeavesDomain,
  IdentityElement,
  InvalidConfig,
  InvalidWord,
  // numerical faults
  ConvergenceFailure,
  CrossCheckMismatch,
  SignUndecidable,
  EmbeddingDegenerate,
  PrecisionExhausted,
  // internal invariants
  InverseNotInOrder,
  LeftHalfSpace,
};

std::string_view to_string(ErrorCode code);

/// Exit code the CLI reports for a given failure: 2 for bad input, 3 for
/// exhausted precision escalation, 1 for everything that signals a broken
/// invariant.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace otm
