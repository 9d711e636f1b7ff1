#pragma once

namespace fld {

// Exit codes: 0 success, 1 usage error, 2 runtime failure, 3 verification
// violations.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitViolations = 3;

// Entry point behind the `fld` binary; also callable from tests.
int run_cli(int argc, const char* const* argv);

}  // namespace fld
