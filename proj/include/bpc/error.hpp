#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bpc {

enum class ErrorKind {
  invalid_params,
  out_of_range,
  infeasible,
  no_solution,
  domain,
  degenerate_curve,
  degenerate_eigenstructure,
  step_failure,
  ambiguous_solution,
  inconsistent_branch,
  insufficient_history,
  date_misalignment,
  insufficient_data,
  invalid_series,
  io_failure,
  usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bpc
