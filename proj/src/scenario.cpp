#include "bpc/scenario.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace bpc {
namespace {

Intersection intersect_branch(const LinearizedSystem& lin, Branch branch,
                              double euler_shift, double phillips_shift) {
  // Euler row:    a11 u_hat + a12 pi_hat = (1 - u*) euler_shift
  // Phillips row: -slope u_hat + pi_hat  = phillips_shift
  const double slope = phillips_slope(lin, branch);
  const double euler_rhs_term = (1.0 - lin.u_star) * euler_shift;
  const double det = lin.a11 + lin.a12 * slope;
  const double u_hat = (euler_rhs_term - lin.a12 * phillips_shift) / det;
  const double pi_hat = (lin.a11 * phillips_shift + slope * euler_rhs_term) / det;
  BranchUsed used = BranchUsed::at_kink;
  if (pi_hat > 0.0) used = BranchUsed::tight;
  if (pi_hat < 0.0) used = BranchUsed::slack;
  return {u_hat, pi_hat, used};
}

std::string describe(const Intersection& x) {
  std::ostringstream os;
  os << "(u_hat=" << x.u_hat << ", pi_hat=" << x.pi_hat << ")";
  return os.str();
}

ScenarioResult run_scenario(const ModelConfig& config, ModelConfig post,
                            double intercept_before, double intercept_after) {
  validate(config);
  const LinearizedSystem lin_before = linearize(config);
  const double i_star_before = efficient_nominal_rate(config).rate;
  const Intersection pre =
      solve_intersection(lin_before, intercept_before - i_star_before);

  post.policy.intercept = intercept_after;
  validate(post);
  const LinearizedSystem lin_after = linearize(post);
  const double i_star_after = efficient_nominal_rate(post).rate;
  const Intersection x = solve_intersection(lin_after, intercept_after - i_star_after);

  ScenarioResult r{};
  r.u_star_before = lin_before.u_star;
  r.u_star_after = lin_after.u_star;
  r.before = {lin_before.u_star + pre.u_hat, lin_before.pi_star + pre.pi_hat};
  r.after = {lin_after.u_star + x.u_hat, lin_after.pi_star + x.pi_hat};
  if (!(r.after.u > 0.0 && r.after.u < 0.5)) {
    throw Error(ErrorKind::domain,
                "post-shock unemployment leaves (0, 1/2); shock too large");
  }
  r.u_gap = x.u_hat;
  r.pi_gap = x.pi_hat;
  r.tightness_gap = tightness_from_unemployment(r.after.u, post.matching) - 1.0;
  r.before_u_gap = r.before.u - lin_after.u_star;
  r.before_pi_gap = r.before.pi - lin_after.pi_star;
  r.branch_used = x.branch;
  r.policy_mode = policy_mode(post.policy);
  r.intercept_before = intercept_before;
  r.intercept_after = intercept_after;
  r.i_star_after = i_star_after;
  r.config_after = post;
  r.after_nonlinear = nonlinear_steady_state(post, r.after);
  return r;
}

}  // namespace

std::string_view to_string(ShockKind kind) noexcept {
  switch (kind) {
    case ShockKind::demand_delta: return "demand-delta";
    case ShockKind::demand_sigma: return "demand-sigma";
    case ShockKind::demand_rate_intercept: return "demand-rate-intercept";
    case ShockKind::supply_separation: return "supply-separation";
    case ShockKind::supply_efficacy: return "supply-efficacy";
  }
  return "unknown";
}

std::optional<ShockKind> parse_shock_kind(std::string_view name) noexcept {
  for (auto k : {ShockKind::demand_delta, ShockKind::demand_sigma,
                 ShockKind::demand_rate_intercept, ShockKind::supply_separation,
                 ShockKind::supply_efficacy}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

bool is_demand(ShockKind kind) noexcept {
  return kind == ShockKind::demand_delta || kind == ShockKind::demand_sigma ||
         kind == ShockKind::demand_rate_intercept;
}

std::string_view to_string(PolicyMode mode) noexcept {
  return mode == PolicyMode::active ? "active" : "passive";
}

PolicyMode policy_mode(const Policy& policy) noexcept {
  return policy.phi > 1.0 ? PolicyMode::active : PolicyMode::passive;
}

std::string_view to_string(BranchUsed branch) noexcept {
  switch (branch) {
    case BranchUsed::tight: return "tight";
    case BranchUsed::slack: return "slack";
    case BranchUsed::at_kink: return "at-kink";
  }
  return "unknown";
}

Intersection solve_intersection(const LinearizedSystem& lin, double euler_shift,
                                double phillips_shift) {
  const bool tight_source = classify(lin, Branch::tight).is_source();
  const bool slack_source = classify(lin, Branch::slack).is_source();
  if (!tight_source || !slack_source) {
    throw Error(ErrorKind::ambiguous_solution,
                "comparative statics need the linearized system to be a source");
  }
  if (!lin.kinked) {
    return intersect_branch(lin, Branch::tight, euler_shift, phillips_shift);
  }
  if (phillips_shift != 0.0) {
    throw Error(ErrorKind::invalid_params,
                "kinked Phillips branches must meet at the divine point");
  }
  const Intersection tight = intersect_branch(lin, Branch::tight, euler_shift, 0.0);
  const Intersection slack = intersect_branch(lin, Branch::slack, euler_shift, 0.0);
  if (tight.pi_hat == 0.0 && slack.pi_hat == 0.0) {
    return {tight.u_hat, 0.0, BranchUsed::at_kink};
  }
  const bool tight_ok = tight.pi_hat >= 0.0;
  const bool slack_ok = slack.pi_hat <= 0.0;
  if (tight_ok && !slack_ok) return {tight.u_hat, tight.pi_hat, BranchUsed::tight};
  if (slack_ok && !tight_ok) return {slack.u_hat, slack.pi_hat, BranchUsed::slack};
  throw InconsistentBranchError(
      std::string(tight_ok ? "both" : "neither") +
          " Phillips branches give a sign-consistent intersection: tight " +
          describe(tight) + ", slack " + describe(slack),
      tight, slack);
}

ScenarioResult apply_demand_shock(const ModelConfig& config, Shock shock) {
  if (!is_demand(shock.kind)) {
    throw Error(ErrorKind::invalid_params,
                std::string(to_string(shock.kind)) + " is not a demand shock");
  }
  const double intercept = policy_intercept(config);
  ModelConfig post = config;
  double intercept_after = intercept;
  switch (shock.kind) {
    case ShockKind::demand_delta: post.prefs.delta += shock.magnitude; break;
    case ShockKind::demand_sigma: post.prefs.sigma += shock.magnitude; break;
    case ShockKind::demand_rate_intercept: intercept_after += shock.magnitude; break;
    default: break;
  }
  return run_scenario(config, post, intercept, intercept_after);
}

ScenarioResult apply_supply_shock(const ModelConfig& config, Shock shock,
                                  bool recenter_intercept) {
  if (is_demand(shock.kind)) {
    throw Error(ErrorKind::invalid_params,
                std::string(to_string(shock.kind)) + " is not a supply shock");
  }
  const double intercept = policy_intercept(config);
  ModelConfig post = config;
  if (shock.kind == ShockKind::supply_separation) {
    post.matching.s += shock.magnitude;
  } else {
    post.matching.omega += shock.magnitude;
  }
  validate(post.matching);
  post.policy.intercept.reset();
  const double intercept_after =
      recenter_intercept ? efficient_nominal_rate(post).rate : intercept;
  return run_scenario(config, post, intercept, intercept_after);
}

ScenarioResult apply_shock(const ModelConfig& config, Shock shock,
                           bool recenter_intercept) {
  if (is_demand(shock.kind)) return apply_demand_shock(config, shock);
  return apply_supply_shock(config, shock, recenter_intercept);
}

KinkAsymmetry kink_asymmetry_report(const ModelConfig& config, double magnitude) {
  if (!(magnitude > 0.0)) {
    throw Error(ErrorKind::invalid_params, "shock magnitude must be positive");
  }
  KinkAsymmetry report{
      apply_demand_shock(config, {ShockKind::demand_rate_intercept, -magnitude}),
      apply_demand_shock(config, {ShockKind::demand_rate_intercept, magnitude}), 0.0};
  report.ratio = std::abs(report.expansionary.pi_gap) /
                 std::abs(report.contractionary.pi_gap);
  return report;
}

std::optional<EconomyState> nonlinear_steady_state(const ModelConfig& config,
                                                   EconomyState guess) {
  const Branch branch = branch_for(guess.pi, config.prefs);
  const auto residual = [&](EconomyState s) -> std::array<double, 2> {
    return {euler_rhs(s, config), phillips_rhs(s, config, branch)};
  };
  EconomyState x = guess;
  try {
    for (int iter = 0; iter < 50; ++iter) {
      const auto f = residual(x);
      const double hu = 1e-7 * x.u;
      const double hp = 1e-7;
      const auto fu_p = residual({x.u + hu, x.pi});
      const auto fu_m = residual({x.u - hu, x.pi});
      const auto fp_p = residual({x.u, x.pi + hp});
      const auto fp_m = residual({x.u, x.pi - hp});
      const double j11 = (fu_p[0] - fu_m[0]) / (2 * hu);
      const double j21 = (fu_p[1] - fu_m[1]) / (2 * hu);
      const double j12 = (fp_p[0] - fp_m[0]) / (2 * hp);
      const double j22 = (fp_p[1] - fp_m[1]) / (2 * hp);
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
      const double du = (f[0] * j22 - j12 * f[1]) / det;
      const double dpi = (j11 * f[1] - j21 * f[0]) / det;
      x = {x.u - du, x.pi - dpi};
      if (std::abs(du) <= 1e-15 * x.u && std::abs(dpi) <= 1e-16) break;
    }
    const auto f = residual(x);
    if (!(std::abs(f[0]) < 1e-12 && std::abs(f[1]) < 1e-12)) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  if (is_kinked(config.prefs) && x.pi != config.prefs.pi_star &&
      branch_for(x.pi, config.prefs) != branch) {
    return std::nullopt;
  }
  return x;
}

}  // namespace bpc
