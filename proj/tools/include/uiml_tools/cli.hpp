#pragma once

#include <iosfwd>

namespace uiml::tools {

/// Exit codes: 0 success, 1 domain or validation error, 2 environment or parse error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uiml::tools
