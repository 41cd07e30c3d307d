#pragma once

#include <string>
#include <vector>

namespace bcross {

// Command dispatch for the bcross tool. Returns the process exit code:
// 0 on success, 1 on validation failure, 2 on parse or usage errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace bcross
