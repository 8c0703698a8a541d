#pragma once

#include <ostream>

namespace tpsd {

/// Exit codes: 0 success, 1 verification failure, 2 usage or validation error, 3 numeric failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tpsd
