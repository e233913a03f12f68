#pragma once

#include <string>
#include <vector>

namespace gq {

/// Entry point of the gq tool (argv without the program name). Returns the
/// process exit code: 0 success, 1 usage error, 2 data/format error,
/// 3 numerical failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace gq
