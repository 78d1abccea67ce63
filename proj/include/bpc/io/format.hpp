#pragma once

#include <string>

namespace bpc::io {

/// Shortest decimal that round-trips to the same double. Used for every CSV
/// value so emitted files are byte-identical across runs.
std::string format_exact(double x);

/// Ten significant digits, for human-readable reports.
std::string format_short(double x);

}  // namespace bpc::io
