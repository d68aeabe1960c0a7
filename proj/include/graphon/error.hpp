#pragma once

#include <stdexcept>
#include <string>

namespace graphon {

enum class ErrorCode {
  InvalidArgument,
  NonSquare,
  InvalidWeights,
  Asymmetric,
  DimensionMismatch,
  EmptyPart,
  WeightMismatch,
  SolverFailure,
  ThresholdSplitsCluster,
  AllZeroSpectrum,
  TooLarge,
  NonDecreasingF,
  GridOverflow,
  TooManyVertices,
  NotCoprime,
  NotEven,
  EntriesOutOfRange,
  ActionDoesNotStabilize,
  IrrationalWeights,
  Parse,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphon
