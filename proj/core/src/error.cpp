#include "pdproj/error.hpp"

namespace pdproj {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonHermitianInput: return "NonHermitianInput";
    case Errc::SolverError: return "SolverError";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::WrongSpaceKind: return "WrongSpaceKind";
    case Errc::InvalidPoint: return "InvalidPoint";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ExhaustedSampling: return "ExhaustedSampling";
    case Errc::TooManyPoints: return "TooManyPoints";
    case Errc::DuplicatePoints: return "DuplicatePoints";
    case Errc::PeriodicityDetected: return "PeriodicityDetected";
    case Errc::InjectivityViolation: return "InjectivityViolation";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::MissingAdjoint: return "MissingAdjoint";
    case Errc::OriginNotFixed: return "OriginNotFixed";
    case Errc::BadDimensions: return "BadDimensions";
    case Errc::WitnessFailed: return "WitnessFailed";
    case Errc::WrongLength: return "WrongLength";
    case Errc::InvalidSpectrum: return "InvalidSpectrum";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace pdproj
