#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation; args excludes the program name. Nothing is written
/// to `out` unless the return value is kExitOk.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isv::cli
