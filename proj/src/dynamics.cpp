#include "bpc/dynamics.hpp"

#include <cmath>
#include <string>

#include "bpc/error.hpp"
#include "root_finding.hpp"

namespace bpc {
namespace {

void require_state(EconomyState state) {
  if (!(state.u > 0.0 && state.u < 0.5) || !std::isfinite(state.pi)) {
    throw Error(ErrorKind::domain,
                "state (u=" + std::to_string(state.u) + ", pi=" +
                    std::to_string(state.pi) + ") outside the model domain");
  }
}

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

ModelConfig default_config() { return ModelConfig{}; }

void validate(const Preferences& prefs) {
  if (!positive_finite(prefs.delta)) {
    throw Error(ErrorKind::invalid_params, "discount rate must be positive");
  }
  if (!(prefs.sigma >= 0.0) || !std::isfinite(prefs.sigma)) {
    throw Error(ErrorKind::invalid_params,
                "marginal utility of wealth must be non-negative");
  }
  if (!std::isfinite(prefs.pi_star)) {
    throw Error(ErrorKind::invalid_params, "inflation norm must be finite");
  }
  if (!positive_finite(prefs.kappa_plus) || !positive_finite(prefs.kappa_minus)) {
    throw Error(ErrorKind::invalid_params,
                "price-adjustment costs must be positive");
  }
  if (prefs.kappa_minus < prefs.kappa_plus) {
    throw Error(ErrorKind::invalid_params,
                "kappa_minus must be at least kappa_plus");
  }
  if (!positive_finite(prefs.labor_force)) {
    throw Error(ErrorKind::invalid_params, "labor force must be positive");
  }
}

void validate(const Policy& policy) {
  if (!(policy.phi >= 0.0) || !std::isfinite(policy.phi)) {
    throw Error(ErrorKind::invalid_params, "Taylor coefficient must be >= 0");
  }
  if (policy.intercept && !std::isfinite(*policy.intercept)) {
    throw Error(ErrorKind::invalid_params, "policy intercept must be finite");
  }
}

void validate(const ModelConfig& config) {
  validate(config.matching);
  validate(config.prefs);
  validate(config.policy);
}

Branch branch_for(double pi, const Preferences& prefs) {
  return pi < prefs.pi_star ? Branch::slack : Branch::tight;
}

double kappa(Branch branch, const Preferences& prefs) {
  return branch == Branch::tight ? prefs.kappa_plus : prefs.kappa_minus;
}

double efficient_unemployment(const ModelConfig& config) {
  validate(config.matching);
  return efficient_rate(config.matching);
}

EfficientRate efficient_nominal_rate(const ModelConfig& config) {
  validate(config);
  const auto& pr = config.prefs;
  const double u_star = efficient_rate(config.matching);
  const double rate = pr.pi_star + pr.delta - pr.sigma * (1.0 - u_star) * pr.labor_force;
  return {rate, rate < 0.0};
}

double policy_intercept(const ModelConfig& config) {
  if (config.policy.intercept) return *config.policy.intercept;
  return efficient_nominal_rate(config).rate;
}

double policy_rate(double pi, const ModelConfig& config) {
  const double rule =
      policy_intercept(config) + config.policy.phi * (pi - config.prefs.pi_star);
  if (config.policy.enforce_zlb && rule < 0.0) return 0.0;
  return rule;
}

double phillips_bracket(double u, const MatchingParams& p) {
  if (!(u > 0.0 && u < 0.5)) {
    throw Error(ErrorKind::domain,
                "unemployment rate " + std::to_string(u) + " outside (0, 1/2)");
  }
  const double v = beveridge_v_of_u(u, p);
  const double producers = 1.0 - u - v;
  if (!(producers > 0.0)) {
    throw Error(ErrorKind::infeasible,
                "u + v(u) >= 1 at u = " + std::to_string(u));
  }
  return 1.0 - (u / v) * producers / (1.0 - 2.0 * u);
}

double euler_rhs(EconomyState state, const ModelConfig& config) {
  validate(config);
  require_state(state);
  const auto& pr = config.prefs;
  const double i = policy_rate(state.pi, config);
  const double employed = 1.0 - state.u;
  return employed *
         (pr.delta - (i - state.pi + pr.sigma * employed * pr.labor_force));
}

double phillips_rhs(EconomyState state, const ModelConfig& config, Branch branch) {
  validate(config);
  require_state(state);
  const auto& pr = config.prefs;
  const double bracket = phillips_bracket(state.u, config.matching);
  return pr.delta * (state.pi - pr.pi_star) - bracket / kappa(branch, pr);
}

double phillips_rhs(EconomyState state, const ModelConfig& config) {
  return phillips_rhs(state, config, branch_for(state.pi, config.prefs));
}

Derivatives rhs(EconomyState state, const ModelConfig& config) {
  return {euler_rhs(state, config), phillips_rhs(state, config)};
}

double euler_curve_u(double pi, const ModelConfig& config) {
  validate(config);
  const auto& pr = config.prefs;
  if (pr.sigma == 0.0) {
    const auto level = horizontal_euler_level(config);
    throw Error(ErrorKind::degenerate_curve,
                level ? "Euler curve is horizontal at pi = i - delta = " +
                            std::to_string(*level)
                      : std::string("Euler curve is horizontal (pi = i - delta)"));
  }
  const double i = policy_rate(pi, config);
  return 1.0 - (pr.delta - i + pi) / (pr.sigma * pr.labor_force);
}

std::optional<double> horizontal_euler_level(const ModelConfig& config) {
  validate(config);
  const auto& pr = config.prefs;
  const double phi = config.policy.phi;
  const double intercept = policy_intercept(config);
  std::optional<double> level;
  if (phi != 1.0) {
    const double pi = (intercept - phi * pr.pi_star - pr.delta) / (1.0 - phi);
    const double rule = intercept + phi * (pi - pr.pi_star);
    if (!config.policy.enforce_zlb || rule >= 0.0) level = pi;
  }
  if (!level && config.policy.enforce_zlb) {
    // At the bound i = 0, so pi = -delta if the rule is indeed negative there.
    const double pi = -pr.delta;
    if (intercept + phi * (pi - pr.pi_star) < 0.0) level = pi;
  }
  return level;
}

double phillips_curve_residual(EconomyState state, const ModelConfig& config) {
  validate(config);
  require_state(state);
  const auto& pr = config.prefs;
  const double k = kappa(branch_for(state.pi, pr), pr);
  return k * pr.delta * (state.pi - pr.pi_star) -
         phillips_bracket(state.u, config.matching);
}

double phillips_curve_pi(double u, const ModelConfig& config) {
  validate(config);
  const auto& pr = config.prefs;
  const double bracket = phillips_bracket(u, config.matching);
  const Branch branch = bracket < 0.0 ? Branch::slack : Branch::tight;
  return pr.pi_star + bracket / (kappa(branch, pr) * pr.delta);
}

double phillips_curve_u(double pi, const ModelConfig& config) {
  validate(config);
  const auto& pr = config.prefs;
  if (!std::isfinite(pi)) {
    throw Error(ErrorKind::domain, "inflation must be finite");
  }
  const double target = kappa(branch_for(pi, pr), pr) * pr.delta * (pi - pr.pi_star);
  const double u_min = min_feasible_unemployment(config.matching);
  const double lo = u_min + 1e-12 * u_min;
  const double hi = 0.5 - 1e-12;
  const auto gap = [&](double u) {
    return phillips_bracket(u, config.matching) - target;
  };
  if (!(gap(lo) > 0.0) || !(gap(hi) < 0.0)) {
    throw Error(ErrorKind::no_solution,
                "no Phillips-curve unemployment rate at pi = " + std::to_string(pi));
  }
  return detail::bisect_root(gap, lo, hi);
}

}  // namespace bpc
