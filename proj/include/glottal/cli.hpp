#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace glottal {

inline constexpr int exit_ok = 0;
inline constexpr int exit_frame_failures = 2;
inline constexpr int exit_usage = 3;

/// Runs the command line (arguments without the program name) and returns
/// the process exit code: 0 when every frame succeeded, 2 when some frame or
/// cell failed, 3 on usage or input-format errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace glottal
