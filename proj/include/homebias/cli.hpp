#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homebias {

/// Environment variable naming the default dataset file.
inline constexpr const char* kDatasetEnv = "HOMEBIAS_DATASET";
inline constexpr const char* kDefaultDatasetPath = "homebias-dataset.json";

/// Runs the command line. Returns the process exit status
/// (0 success, 1 usage, 2 data error, 3 numerical failure).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homebias
