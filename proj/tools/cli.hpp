#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace supergeom::cli {

inline constexpr int kStatusOk = 0;
inline constexpr int kStatusFail = 1;
inline constexpr int kStatusInputError = 2;

/// Runs one command. `args` excludes the program name. Human-readable output
/// and the `RESULT:` summary line go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace supergeom::cli
