#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace malle::cli {

// Exit codes: 0 success, 2 domain error, 3 resource/budget error,
// 4 reduction failure, 64 usage.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitReductionFailed = 4;
inline constexpr int kExitUsage = 64;

/// Runs one invocation. The report document goes to `out`; diagnostics go
/// to `err`. argv excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace malle::cli
