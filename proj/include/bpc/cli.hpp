#pragma once

#include <iosfwd>

namespace bpc {

/// Exit codes: 0 success, 1 usage error, 2 domain or solver error, 3 I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bpc
