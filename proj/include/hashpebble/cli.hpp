#pragma once

#include <iosfwd>

namespace hashpebble {

/// Entry point of the `hashpebble` tool. Exit status: 0 ok, 1 failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hashpebble
