#pragma once

#include <iosfwd>

namespace twcli {

/// Entry point of the `tw` tool. Exit codes: 0 success, 1 numerical or
/// check failure, 2 usage or validation error.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace twcli
