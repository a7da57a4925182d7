#pragma once

#include <ostream>

namespace polkit {

// Entry point shared by the polkit binary and the tests. Returns the exit
// code: 0 ok, 1 check failure or computation error, 2 malformed fixture/usage.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polkit
