#include "bpc/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "bpc/error.hpp"
#include "bpc/integrator.hpp"
#include "bpc/io/portrait.hpp"
#include "bpc/linear.hpp"
#include "bpc/matching.hpp"
#include "root_finding.hpp"

namespace bpc {
namespace {

double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::string fmt(const char* format, double x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

// Geometric grid on [lo, hi] with both ends pulled in by a relative margin.
std::vector<double> geometric_grid(double lo, double hi, int n, double margin) {
  const double a = std::log(lo * (1.0 + margin));
  const double b = std::log(hi * (1.0 - margin));
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    grid[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (n - 1));
  }
  return grid;
}

double central_log_derivative(const std::function<double(double)>& f, double x) {
  const double h = 1e-6;
  return (std::log(f(x * std::exp(h))) - std::log(f(x * std::exp(-h)))) / (2.0 * h);
}

// The demand elasticity is -1 / (d ln(1 + tau) / d ln theta), by the implicit
// function theorem on the demand curve. Differencing ln(1 + tau) stays well
// conditioned near the lower tightness bound, where the demand map itself
// amplifies rounding by the size of the elasticity.
double demand_elasticity_fd(double theta, const MatchingParams& m) {
  const double h = 1e-6;
  const double up = std::log1p(recruiter_producer_ratio(theta * std::exp(h), m));
  const double dn = std::log1p(recruiter_producer_ratio(theta * std::exp(-h), m));
  return -2.0 * h / (up - dn);
}

// Direct difference of ln theta_j in ln p_j, usable where |elasticity| is modest.
double demand_map_fd(double theta, const MatchingParams& m) {
  const double h = 1e-6;
  const double up = std::log(demand_tightness(std::exp(h), 1.0, theta, m));
  const double dn = std::log(demand_tightness(std::exp(-h), 1.0, theta, m));
  return (up - dn) / (2.0 * h);
}

CheckResult max_error_check(std::string name, double err, double tol) {
  return {std::move(name), err < tol, fmt("max error %.3g", err) + fmt(" (tolerance %.0e)", tol)};
}

CheckResult matching_identities(const MatchingParams& m) {
  const auto [lo, hi] = tightness_bounds(m);
  double err = 0.0;
  const double c = efficient_rate(m) * efficient_rate(m);
  for (double th : geometric_grid(lo, hi, 2000, 1e-12)) {
    const auto st = labor_market_state(th, m);
    err = std::max(err, rel_err(st.u * st.v, c));
    err = std::max(err, rel_err(customer_finding_rate(th, m),
                                th * worker_finding_rate(th, m)));
  }
  return max_error_check("beveridge-hyperbola-and-rate-identity", err, 1e-14);
}

CheckResult monotonicity(const MatchingParams& m) {
  const auto [lo, hi] = tightness_bounds(m);
  double prev_f = -INFINITY, prev_q = INFINITY;
  for (double th : geometric_grid(lo, hi, 10000, 1e-12)) {
    const double f = customer_finding_rate(th, m);
    const double q = worker_finding_rate(th, m);
    if (!(f > prev_f) || !(q < prev_q)) {
      return {"rate-monotonicity", false, fmt("monotonicity fails at theta=%.10g", th)};
    }
    prev_f = f;
    prev_q = q;
  }
  return {"rate-monotonicity", true, "f increasing, q decreasing on 10^4 points"};
}

CheckResult elasticity_check(const MatchingParams& m) {
  const auto [lo, hi] = tightness_bounds(m);
  double err = 0.0;
  for (double th : geometric_grid(lo, hi, 200, 1e-3)) {
    const auto e = elasticities(th, m);
    const auto at = [&](auto fn) { return [&, fn](double x) { return fn(x, m); }; };
    err = std::max(err, rel_err(e.finding, central_log_derivative(at(customer_finding_rate), th)));
    err = std::max(err, rel_err(-e.worker_finding,
                                central_log_derivative(
                                    [&](double x) { return 1.0 / worker_finding_rate(x, m); },
                                    th)));
    err = std::max(err,
                   rel_err(e.unemployment, central_log_derivative(at(unemployment_rate), th)));
    err = std::max(err, rel_err(e.recruiter_ratio,
                                central_log_derivative(at(recruiter_producer_ratio), th)));
    err = std::max(err, rel_err(e.demand, demand_elasticity_fd(th, m)));
    if (std::abs(e.demand) >= 0.05 && std::abs(e.demand) <= 50.0) err = std::max(err, rel_err(e.demand, demand_map_fd(th, m)));
  }
  return max_error_check("elasticities-vs-finite-differences", err, 1e-6);
}

CheckResult tau_consistency(const MatchingParams& m) {
  const auto [lo, hi] = tightness_bounds(m);
  double err = 0.0;
  for (double th : geometric_grid(lo, hi, 500, 1e-3)) {
    err = std::max(err, rel_err(recruiter_producer_ratio(th, m),
                                recruiter_producer_from_u(unemployment_rate(th, m), m)));
  }
  return max_error_check("recruiter-ratio-consistency", err, 1e-12);
}

CheckResult efficiency_bracketing(const MatchingParams& m) {
  const auto [lo, hi] = tightness_bounds(m);
  for (double th : geometric_grid(lo, hi, 1001, 1e-9)) {
    const auto st = labor_market_state(th, m);
    if ((st.v > st.u) != (th > 1.0)) {
      return {"efficiency-bracketing", false, fmt("v > u disagrees with theta > 1 at %.10g", th)};
    }
  }
  const auto at_one = labor_market_state(1.0, m);
  if (at_one.u != at_one.v) {
    return {"efficiency-bracketing", false, "u != v at theta = 1"};
  }
  return {"efficiency-bracketing", true, "v > u iff theta > 1; u = v at theta = 1"};
}

CheckResult upper_bound_check(const MatchingParams& m) {
  const double closed = upper_tightness_bound(m);
  const double lo = lower_tightness_bound(m);
  const double root = detail::bisect_root(
      [&](double th) { return worker_finding_rate(th, m) - m.s; }, lo * (1.0 + 1e-9),
      4.0 * closed);
  return max_error_check("upper-tightness-bound", rel_err(closed, root), 1e-10);
}

CheckResult divine_coincidence(ModelConfig config) {
  config.policy.intercept.reset();
  const EconomyState star{efficient_unemployment(config), config.prefs.pi_star};
  const double err =
      std::max(std::abs(euler_rhs(star, config)), std::abs(phillips_rhs(star, config)));
  return max_error_check("divine-coincidence", err, 1e-12);
}

CheckResult phillips_sign_structure(const ModelConfig& config) {
  const auto& m = config.matching;
  const double u_star = efficient_rate(m);
  const double u_lo = min_feasible_unemployment(m) * (1.0 + 1e-6);
  for (int k = 0; k <= 1000; ++k) {
    const double u = u_lo + (0.5 - 1e-6 - u_lo) * k / 1000.0;
    const double br = phillips_bracket(u, m);
    const double v = beveridge_v_of_u(u, m);
    const bool tight = u < u_star;
    if (u == u_star) continue;
    if ((br > 0.0) != tight || (v > u) != tight) {
      return {"phillips-sign-structure", false, fmt("sign mismatch at u=%.10g", u)};
    }
  }
  return {"phillips-sign-structure", true, "bracket > 0 iff v > u iff u < u*"};
}

CheckResult kink_sign_agreement(const ModelConfig& config) {
  const double u_star = efficient_unemployment(config);
  const double pi_star = config.prefs.pi_star;
  for (double f : {0.6, 0.8, 0.95, 1.0, 1.05, 1.2, 1.4}) {
    const EconomyState s{u_star * f, pi_star};
    const double tight = phillips_rhs(s, config, Branch::tight);
    const double slack = phillips_rhs(s, config, Branch::slack);
    if ((tight > 0.0) != (slack > 0.0) || (tight < 0.0) != (slack < 0.0)) {
      return {"kink-direction", false, fmt("branches disagree at u=%.10g", s.u)};
    }
  }
  const EconomyState star{u_star, pi_star};
  if (std::abs(phillips_rhs(star, config, Branch::tight) -
               phillips_rhs(star, config, Branch::slack)) > 1e-12) {
    return {"kink-direction", false, "branches differ at the divine point"};
  }
  return {"kink-direction", true, "both branches agree in sign on the norm, equal at u*"};
}

CheckResult jacobian_equivalence(ModelConfig config) {
  config.policy.intercept.reset();
  const LinearizedSystem lin = linearize(config);
  const EconomyState star{lin.u_star, lin.pi_star};
  double err = 0.0;
  for (Branch b : {Branch::tight, Branch::slack}) {
    const auto f = [&](EconomyState s) {
      return std::array<double, 2>{euler_rhs(s, config), phillips_rhs(s, config, b)};
    };
    const double hu = 1e-6 * star.u;
    const double hp = 1e-6 * std::max(std::abs(star.pi), 1e-2);
    const auto up = f({star.u + hu, star.pi}), um = f({star.u - hu, star.pi});
    const auto pp = f({star.u, star.pi + hp}), pm = f({star.u, star.pi - hp});
    const Mat2 m = lin.matrix(b);
    const double fd[2][2] = {{(up[0] - um[0]) / (2 * hu), (pp[0] - pm[0]) / (2 * hp)},
                             {(up[1] - um[1]) / (2 * hu), (pp[1] - pm[1]) / (2 * hp)}};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const auto ru = static_cast<std::size_t>(r), cu = static_cast<std::size_t>(c);
        // Entries that vanish analytically are compared on an absolute scale.
        err = std::max(err, m[ru][cu] == 0.0 ? std::abs(fd[r][c]) : rel_err(m[ru][cu], fd[r][c]));
      }
    }
  }
  return max_error_check("jacobian-equivalence", err, 1e-6);
}

CheckResult source_under_sigma_condition(const ModelConfig& config) {
  const auto cond = sigma_condition(config);
  if (!cond.holds) {
    return {"source-for-all-phi", true,
            fmt("skipped: sigma below sigma_min = %.6g", cond.sigma_min)};
  }
  for (double phi : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 5.0}) {
    ModelConfig c = config;
    c.policy.phi = phi;
    for (Branch b : {Branch::tight, Branch::slack}) {
      const auto cl = classify(linearize(c), b);
      if (!(cl.trace > c.prefs.delta) || !(cl.determinant > 0.0) ||
          !(cl.eigenvalues[0].real() > 0.0 && cl.eigenvalues[1].real() > 0.0)) {
        return {"source-for-all-phi", false, fmt("not a source at phi=%.3g", phi)};
      }
    }
  }
  return {"source-for-all-phi", true, "source on both branches for phi in {0..5}"};
}

CheckResult portrait_checks(const ModelConfig& config, bool linearized) {
  const char* name = linearized ? "arrow-signs-linear" : "arrow-signs-nonlinear";
  io::PortraitOptions opt;
  opt.bounds = io::default_bounds(config);
  opt.linearized = linearized;
  const auto portrait = io::build_phase_portrait(config, opt);
  const auto q = io::check_quadrant_signs(config, portrait);
  if (!q.ok()) return {name, false, q.violations.front()};
  const auto r = io::nullcline_residuals(config, portrait);
  const double worst = std::max(r.euler, r.phillips);
  if (!(worst < 1e-8)) return {name, false, fmt("nullcline residual %.3g", worst)};
  return {name, true,
          std::to_string(q.phillips_checked) + " Phillips and " +
              std::to_string(q.euler_checked) + " Euler points; nullcline residual " +
              fmt("%.2g", worst)};
}

CheckResult linear_solution_vs_rk4(const ModelConfig& config) {
  const LinearizedSystem lin = linearize(config);
  if (classify(lin, Branch::tight).kind == StabilityKind::degenerate) {
    return {"linear-solution-vs-rk4", true, "skipped: degenerate eigenstructure"};
  }
  // A symmetric copy so the path does not switch branches.
  LinearizedSystem sym = lin;
  sym.a21_slack = sym.a21_tight;
  sym.kinked = false;
  const Vec2 x0{1e-3, 5e-4};
  const auto traj = integrate(linear_field(sym), {sym.u_star + x0[0], sym.pi_star + x0[1]},
                              5.0, 1e-3);
  double err = 0.0;
  for (const auto& p : traj.points) {
    const Vec2 x = linear_solution(sym, x0, p.t);
    err = std::max({err, std::abs(x[0] - (p.u - sym.u_star)),
                    std::abs(x[1] - (p.pi - sym.pi_star))});
  }
  return max_error_check("linear-solution-vs-rk4", err, 1e-8);
}

CheckResult kink_slope_ratio(const ModelConfig& config) {
  const LinearizedSystem lin = linearize(config);
  const double ratio = phillips_slope(lin, Branch::slack) / phillips_slope(lin, Branch::tight);
  const double expected = config.prefs.kappa_plus / config.prefs.kappa_minus;
  return max_error_check("kink-slope-ratio", rel_err(ratio, expected), 1e-15);
}

CheckResult fixed_point_preserved(ModelConfig config) {
  config.policy.intercept.reset();
  const EconomyState star{efficient_unemployment(config), config.prefs.pi_star};
  const auto traj = integrate(star, config, 50.0, 0.5);
  double drift = 0.0;
  for (const auto& p : traj.points) {
    drift = std::max({drift, std::abs(p.u - star.u), std::abs(p.pi - star.pi)});
  }
  return max_error_check("integrator-fixed-point", drift, 1e-12);
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const ModelConfig& config) {
  validate(config);
  using Check = std::function<CheckResult()>;
  const auto& m = config.matching;
  const std::vector<std::pair<std::string, Check>> checks = {
      {"beveridge-hyperbola-and-rate-identity", [&] { return matching_identities(m); }},
      {"rate-monotonicity", [&] { return monotonicity(m); }},
      {"elasticities-vs-finite-differences", [&] { return elasticity_check(m); }},
      {"recruiter-ratio-consistency", [&] { return tau_consistency(m); }},
      {"efficiency-bracketing", [&] { return efficiency_bracketing(m); }},
      {"upper-tightness-bound", [&] { return upper_bound_check(m); }},
      {"divine-coincidence", [&] { return divine_coincidence(config); }},
      {"phillips-sign-structure", [&] { return phillips_sign_structure(config); }},
      {"kink-direction", [&] { return kink_sign_agreement(config); }},
      {"jacobian-equivalence", [&] { return jacobian_equivalence(config); }},
      {"source-for-all-phi", [&] { return source_under_sigma_condition(config); }},
      {"arrow-signs-nonlinear", [&] { return portrait_checks(config, false); }},
      {"arrow-signs-linear", [&] { return portrait_checks(config, true); }},
      {"linear-solution-vs-rk4", [&] { return linear_solution_vs_rk4(config); }},
      {"kink-slope-ratio", [&] { return kink_slope_ratio(config); }},
      {"integrator-fixed-point", [&] { return fixed_point_preserved(config); }},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, run] : checks) {
    try {
      results.push_back(run());
    } catch (const Error& e) {
      results.push_back({name, false, std::string(to_string(e.kind())) + ": " + e.what()});
    }
  }
  return results;
}

}  // namespace bpc
