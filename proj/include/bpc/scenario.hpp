#pragma once

#include <optional>
#include <string_view>

#include "bpc/dynamics.hpp"
#include "bpc/error.hpp"
#include "bpc/linear.hpp"

// Comparative statics for unexpected permanent shocks. Because the
// linearized system is a source, the economy jumps from the old intersection
// of the linearized Euler and Phillips curves to the new one.

namespace bpc {

enum class ShockKind {
  demand_delta,           // discount rate
  demand_sigma,           // marginal utility of wealth
  demand_rate_intercept,  // Taylor-rule intercept
  supply_separation,      // job-separation rate s
  supply_efficacy,        // matching efficacy omega
};

std::string_view to_string(ShockKind kind) noexcept;
std::optional<ShockKind> parse_shock_kind(std::string_view name) noexcept;
bool is_demand(ShockKind kind) noexcept;

struct Shock {
  ShockKind kind;
  double magnitude;  // signed change in the parameter's own units
};

enum class PolicyMode { active, passive };
std::string_view to_string(PolicyMode mode) noexcept;

/// Active when phi > 1, passive when 0 <= phi <= 1.
PolicyMode policy_mode(const Policy& policy) noexcept;

enum class BranchUsed { tight, slack, at_kink };
std::string_view to_string(BranchUsed branch) noexcept;

struct Intersection {
  double u_hat;
  double pi_hat;
  BranchUsed branch;
};

/// Raised when neither (or both) kinked branches give a solution whose
/// inflation gap lies on the branch's own side. Carries both candidates.
class InconsistentBranchError : public Error {
 public:
  InconsistentBranchError(const std::string& what, Intersection tight, Intersection slack)
      : Error(ErrorKind::inconsistent_branch, what), tight_(tight), slack_(slack) {}
  const Intersection& tight_candidate() const noexcept { return tight_; }
  const Intersection& slack_candidate() const noexcept { return slack_; }

 private:
  Intersection tight_;
  Intersection slack_;
};

/// Intersects the shifted linearized Euler curve
///   sigma l u_hat - (phi - 1) pi_hat = euler_shift
/// (euler_shift = policy intercept - i*, in rate units) with the linearized
/// Phillips curve pi_hat = slope_b u_hat + phillips_shift. On a kinked system
/// the branch is chosen by the sign of the resulting pi_hat, and
/// phillips_shift must be zero so both branches meet at the origin.
Intersection solve_intersection(const LinearizedSystem& lin, double euler_shift,
                                double phillips_shift = 0.0);

struct ScenarioResult {
  EconomyState before;
  EconomyState after;
  /// Fixed point of the post-shock nonlinear system near `after`, if Newton
  /// iteration from the linear answer converges on the same branch.
  std::optional<EconomyState> after_nonlinear;
  double u_star_before;
  double u_star_after;
  double u_gap;          // after.u - u_star_after
  double pi_gap;         // after.pi - pi*
  double tightness_gap;  // theta(after.u) - 1 under post-shock matching
  /// The pre-shock state measured in post-shock deviations.
  double before_u_gap;
  double before_pi_gap;
  BranchUsed branch_used;
  PolicyMode policy_mode;
  double intercept_before;
  double intercept_after;
  double i_star_after;
  ModelConfig config_after;
};

/// Demand shocks keep the policy intercept where it was before the shock.
ScenarioResult apply_demand_shock(const ModelConfig& config, Shock shock);

/// Supply shocks move u* and hence the linearization point. With
/// `recenter_intercept` the central bank moves its intercept to the new i*;
/// without it the intercept stays at its pre-shock value.
ScenarioResult apply_supply_shock(const ModelConfig& config, Shock shock,
                                  bool recenter_intercept);

ScenarioResult apply_shock(const ModelConfig& config, Shock shock,
                           bool recenter_intercept = false);

struct KinkAsymmetry {
  ScenarioResult expansionary;    // intercept lowered by magnitude
  ScenarioResult contractionary;  // intercept raised by magnitude
  /// |pi_gap(expansionary)| / |pi_gap(contractionary)|.
  double ratio;
};

KinkAsymmetry kink_asymmetry_report(const ModelConfig& config, double magnitude);

/// Newton iteration on the nonlinear Euler-Phillips right-hand sides with
/// the Phillips branch of `guess` held fixed. Empty on non-convergence or if
/// the root lands on the other side of the inflation norm.
std::optional<EconomyState> nonlinear_steady_state(const ModelConfig& config,
                                                   EconomyState guess);

}  // namespace bpc
