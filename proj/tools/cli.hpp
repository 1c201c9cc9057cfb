#pragma once

namespace liftspec::cli {

// Full command line driver. Returns the process exit code: 0 on success,
// 1 on configuration or input errors, 2 on numerical failures.
int cli_main(int argc, const char* const* argv);

}  // namespace liftspec::cli
