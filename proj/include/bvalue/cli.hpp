#pragma once

#include <iosfwd>

namespace bvalue {

// Full command dispatch. Returns the process exit code: 0 on success, 2 on
// user error (bad flags, malformed input, unknown group), 1 on internal
// error. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace bvalue
