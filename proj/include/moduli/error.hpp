#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moduli {

enum class ErrorCode {
  // input validation
  ParseError,
  InvalidField,
  DimensionMismatch,
  ShapeMismatch,
  IndexOutOfRange,
  NonSquareSelection,
  InvalidMultiIndex,
  NonzeroThetaAlpha,
  // computational outcomes
  SingularMatrix,
  SingularBaseChange,
  RankDeficient,
  NotControllable,
  NotInLocus,
  CellNotReached,
  OracleTooLarge,
  CensusTooLarge,
  NonTrivialStabilizer,
  InsufficientData,
  NotStabilized,
  InconsistentData,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by malformed input rather than by the mathematics.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace moduli
