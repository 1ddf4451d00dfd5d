#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aoi::cli {

inline constexpr const char* kToolName = "aoi_shs";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kAnalysisError = 1, kUsageError = 2 };

/// Runs one command line (without the program name). Data goes to files
/// under --out; diagnostics go to `err`.
int execute(const std::vector<std::string>& args, std::ostream& err);

}  // namespace aoi::cli
