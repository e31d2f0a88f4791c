#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdproj {

enum class Errc {
  NonHermitianInput,
  SolverError,
  DimensionMismatch,
  SpaceMismatch,
  WrongSpaceKind,
  InvalidPoint,
  InvalidArgument,
  ExhaustedSampling,
  TooManyPoints,
  DuplicatePoints,
  PeriodicityDetected,
  InjectivityViolation,
  ZeroVector,
  MissingAdjoint,
  OriginNotFixed,
  BadDimensions,
  WitnessFailed,
  WrongLength,
  InvalidSpectrum,
  TooLarge,
  ConfigError,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pdproj
