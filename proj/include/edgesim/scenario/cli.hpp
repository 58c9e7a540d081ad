#pragma once

#include <iosfwd>

namespace edgesim::scenario {

// Command-line front end. Exit codes: 0 success, 1 usage/validation error,
// 2 runtime error. Output streams are injectable for testing.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace edgesim::scenario
