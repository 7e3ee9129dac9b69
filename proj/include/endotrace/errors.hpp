#pragma once

#include <stdexcept>
#include <string>

namespace endotrace {

enum class ErrorCode {
  ZeroInverse,
  BothZero,
  NotInvertible,
  SingularCurve,
  FieldMismatch,
  Undecided,
  JInvariantMismatch,
  InvalidKernel,
  CoefficientLeak,
  BrokenChain,
  NotEndomorphism,
  RingMismatch,
  NonUnitSlope,
  NonUnitDenominator,
  NoMatch,
  WrongOrderStructure,
  DlogFailure,
  InconsistentResidues,
  UnsupportedPrime,
  GiveUp,
  InvalidArgument,
  Parse,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace endotrace
