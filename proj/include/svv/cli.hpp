#pragma once

namespace svv {

// Entry point behind the svv binary; exposed for in-process testing.
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage error,
// 3 numerical error.
int cli_run(int argc, const char* const* argv);

}  // namespace svv
