#include "bpc/error.hpp"

namespace bpc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_params: return "invalid-params";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::no_solution: return "no-solution";
    case ErrorKind::domain: return "domain";
    case ErrorKind::degenerate_curve: return "degenerate-curve";
    case ErrorKind::degenerate_eigenstructure: return "degenerate-eigenstructure";
    case ErrorKind::step_failure: return "step-failure";
    case ErrorKind::ambiguous_solution: return "ambiguous-solution";
    case ErrorKind::inconsistent_branch: return "inconsistent-branch";
    case ErrorKind::insufficient_history: return "insufficient-history";
    case ErrorKind::date_misalignment: return "date-misalignment";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::invalid_series: return "invalid-series";
    case ErrorKind::io_failure: return "io-failure";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

}  // namespace bpc
