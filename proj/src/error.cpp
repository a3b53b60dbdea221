#include "isv/error.hpp"

namespace isv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IdealPoint: return "IdealPoint";
    case ErrorCode::NotHyperideal: return "NotHyperideal";
    case ErrorCode::IntersectingTruncationPlanes: return "IntersectingTruncationPlanes";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::MaxSubdivisions: return "MaxSubdivisions";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NumericallyDegenerate: return "NumericallyDegenerate";
    case ErrorCode::TouchesSphere: return "TouchesSphere";
    case ErrorCode::NoFeasiblePoint: return "NoFeasiblePoint";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnpairedFace: return "UnpairedFace";
    case ErrorCode::InconsistentInvolution: return "InconsistentInvolution";
    case ErrorCode::BadPermutation: return "BadPermutation";
    case ErrorCode::DuplicateGluing: return "DuplicateGluing";
    case ErrorCode::NonManifoldLink: return "NonManifoldLink";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::NotOrientable: return "NotOrientable";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::BadGenus: return "BadGenus";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace isv
