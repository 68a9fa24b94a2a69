#include "urnlab/errors.hpp"

namespace urnlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateUrn: return "DegenerateUrn";
    case ErrorCode::NonPositiveCount: return "NonPositiveCount";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::UnsupportedModel: return "UnsupportedModel";
    case ErrorCode::OutOfRangeState: return "OutOfRangeState";
    case ErrorCode::MissingMoment: return "MissingMoment";
    case ErrorCode::RequiresCEquals1: return "RequiresCEquals1";
    case ErrorCode::SameColor: return "SameColor";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::RootFindingFailed: return "RootFindingFailed";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonRealResult: return "NonRealResult";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace urnlab
