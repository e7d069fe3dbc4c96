#pragma once

#include <iosfwd>

namespace l0cert::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Exit codes: 0 success, 2 bad input or parameters, 3 enumeration cap, 4 other failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace l0cert::cli
