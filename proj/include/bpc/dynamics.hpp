#pragma once

#include <optional>

#include "bpc/matching.hpp"

// The Euler-Phillips system in the unemployment-inflation plane:
//
//   du/dt  = (1 - u) * (delta - [i - pi + sigma (1 - u) l])
//   dpi/dt = delta (pi - pi*) - (1/kappa) * [1 - (u / v(u)) (1 - u - v(u)) / (1 - 2u)]
//
// with the policy rate i = intercept + phi (pi - pi*). The price-adjustment
// cost kappa is kappa_minus below the inflation norm and kappa_plus above it.

namespace bpc {

struct Preferences {
  double delta = 0.03;        // time discount rate
  double sigma = 0.03;        // marginal utility of wealth
  double pi_star = 0.02;      // inflation norm
  double kappa_plus = 60000;  // cost of inflation above the norm
  double kappa_minus = 60000; // cost of inflation below the norm
  double labor_force = 1.0;
};

struct Policy {
  /// Taylor-rule intercept. Empty means "track the efficient rate i*".
  std::optional<double> intercept;
  double phi = 1.5;
  bool enforce_zlb = false;
};

struct EconomyState {
  double u;
  double pi;
};

struct ModelConfig {
  MatchingParams matching;
  Preferences prefs;
  Policy policy;
};

/// s = 0.04, omega = 1, delta = 0.03, sigma = 0.03, pi* = 0.02,
/// kappa = 60000 on both sides, l = 1, phi = 1.5, efficient intercept.
ModelConfig default_config();

void validate(const Preferences& prefs);
void validate(const Policy& policy);
void validate(const ModelConfig& config);

/// Side of the inflation norm. `tight` is pi >= pi* (kappa_plus), `slack`
/// is pi < pi* (kappa_minus); on the Phillips curve these are the
/// inefficiently tight and inefficiently slack halves respectively.
enum class Branch { tight, slack };

inline bool is_kinked(const Preferences& prefs) {
  return prefs.kappa_minus != prefs.kappa_plus;
}
Branch branch_for(double pi, const Preferences& prefs);
double kappa(Branch branch, const Preferences& prefs);

double efficient_unemployment(const ModelConfig& config);

struct EfficientRate {
  double rate;
  bool zlb_violation;
};

/// i* = pi* + delta - sigma (1 - u*) l. A negative value is flagged, not
/// rejected: the divine steady state then violates the zero lower bound.
EfficientRate efficient_nominal_rate(const ModelConfig& config);

/// The configured intercept, or i* when the policy tracks it.
double policy_intercept(const ModelConfig& config);

/// Taylor rule, clamped at zero when the policy enforces the ZLB.
double policy_rate(double pi, const ModelConfig& config);

/// 1 - (u / v(u)) (1 - u - v(u)) / (1 - 2u): zero at u*, positive when the
/// labor market is inefficiently tight, negative when slack.
double phillips_bracket(double u, const MatchingParams& p);

struct Derivatives {
  double du;
  double dpi;
};

double euler_rhs(EconomyState state, const ModelConfig& config);
double phillips_rhs(EconomyState state, const ModelConfig& config);
double phillips_rhs(EconomyState state, const ModelConfig& config, Branch branch);
Derivatives rhs(EconomyState state, const ModelConfig& config);

/// The du/dt = 0 locus solved for u. Throws Error{degenerate_curve} when
/// sigma = 0; the locus is then horizontal, see horizontal_euler_level.
double euler_curve_u(double pi, const ModelConfig& config);

/// With sigma = 0, the inflation level solving pi = i(pi) - delta.
/// Empty when no isolated solution exists (phi = 1).
std::optional<double> horizontal_euler_level(const ModelConfig& config);

/// kappa delta (pi - pi*) - bracket(u): zero exactly on the Phillips curve.
double phillips_curve_residual(EconomyState state, const ModelConfig& config);

/// Steady-state inflation on the Phillips curve at unemployment u.
double phillips_curve_pi(double u, const ModelConfig& config);

/// Unemployment on the Phillips curve at inflation pi, found by bisection.
double phillips_curve_u(double pi, const ModelConfig& config);

}  // namespace bpc
