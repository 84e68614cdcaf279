#pragma once

namespace tfi::cli {

/// Command-line entry point. Exit codes: 0 success, 1 data/file error,
/// 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace tfi::cli
