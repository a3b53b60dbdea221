#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isv {

enum class ErrorCode {
  // hyperlin
  IdealPoint,
  NotHyperideal,
  IntersectingTruncationPlanes,
  DegenerateEdge,
  // specfun
  OutOfDomain,
  MaxSubdivisions,
  NoSignChange,
  // trunc
  InvalidConfig,
  NumericallyDegenerate,
  TouchesSphere,
  // extremal
  NoFeasiblePoint,
  // idtri
  ParseError,
  UnpairedFace,
  InconsistentInvolution,
  BadPermutation,
  DuplicateGluing,
  NonManifoldLink,
  NonIntegral,
  NotOrientable,
  // bounds
  MissingField,
  BadGenus,
  // misc
  InvalidArgument,
  Overflow,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type for every domain error raised by the library. The code is
/// stable and is what tests and the Python layer dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace isv
