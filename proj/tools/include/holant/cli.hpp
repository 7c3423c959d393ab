#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace holant::cli {

/// Version of every JSON document the CLI emits, under "schema_version".
inline constexpr int kSchemaVersion = 1;

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kHard = 3;
inline constexpr int kInternal = 4;

/// Runs one command. `args` excludes the program name. JSON goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holant::cli
