#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsgr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 1 on a usage error and 2 on a data / format error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rsgr::cli
