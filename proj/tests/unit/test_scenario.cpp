#include <catch_amalgamated.hpp>

#include <cmath>

#include "bpc/error.hpp"
#include "bpc/scenario.hpp"
#include "oracles.hpp"

using namespace bpc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ModelConfig kinked_config() {
  auto c = default_config();
  c.prefs.kappa_minus = 2 * c.prefs.kappa_plus;
  return c;
}

// Intersection of the linearized Euler row with one Phillips branch, by hand.
oracle::V2 hand_intersection(const ModelConfig& c, double kappa, double shift) {
  const double k = oracle::model::phillips_k(c, kappa);
  const double l = c.prefs.sigma * c.prefs.labor_force;
  const double u = shift / (l + (c.policy.phi - 1.0) * k);
  return {u, -k * u};
}

}  // namespace

TEST_CASE("names and modes", "[scenario]") {
  for (auto k : {ShockKind::demand_delta, ShockKind::demand_sigma, ShockKind::demand_rate_intercept,
                 ShockKind::supply_separation, ShockKind::supply_efficacy}) {
    CHECK(parse_shock_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_shock_kind("nonsense").has_value());
  CHECK(is_demand(ShockKind::demand_sigma));
  CHECK_FALSE(is_demand(ShockKind::supply_efficacy));
  Policy p;
  p.phi = 1.5;
  CHECK(policy_mode(p) == PolicyMode::active);
  p.phi = 1.0;
  CHECK(policy_mode(p) == PolicyMode::passive);
  p.phi = 0.0;
  CHECK(policy_mode(p) == PolicyMode::passive);
}

TEST_CASE("linear intersection", "[scenario]") {
  const auto c = default_config();
  const auto lin = linearize(c);
  const auto x = solve_intersection(lin, 0.001);
  CHECK_THAT(x.u_hat, WithinAbs(0.022476, 1e-6));
  CHECK_THAT(x.pi_hat, WithinAbs(-6.515e-4, 1e-7));
  const auto h = hand_intersection(c, 60000, 0.001);
  CHECK_THAT(x.u_hat, WithinRel(h[0], 1e-12));
  CHECK_THAT(x.pi_hat, WithinRel(h[1], 1e-12));

  const auto zero = solve_intersection(lin, 0.0);
  CHECK(zero.u_hat == 0.0);
  CHECK(zero.pi_hat == 0.0);

  SECTION("kinked system picks the sign-consistent branch") {
    auto k = default_config();
    k.prefs.kappa_minus = 120000;
    const auto lk = linearize(k);
    const auto s = solve_intersection(lk, 0.001);
    CHECK(s.branch == BranchUsed::slack);
    CHECK_THAT(s.u_hat, WithinAbs(0.026848, 1e-6));
    CHECK_THAT(s.pi_hat, WithinAbs(-3.891e-4, 1e-7));
    const auto t = solve_intersection(lk, -0.001);
    CHECK(t.branch == BranchUsed::tight);
    const auto ht = hand_intersection(k, 60000, -0.001);
    CHECK_THAT(t.u_hat, WithinRel(ht[0], 1e-12));
    CHECK(solve_intersection(lk, 0.0).branch == BranchUsed::at_kink);
    try {
      solve_intersection(lk, 0.001, 1e-4);
      FAIL("expected invalid_params");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::invalid_params);
    }
  }

  SECTION("saddle systems are rejected") {
    auto p = default_config();
    p.policy.phi = 0.0;
    p.prefs.sigma = 0.01;
    try {
      solve_intersection(linearize(p), 0.001);
      FAIL("expected ambiguous_solution");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ambiguous_solution);
    }
  }
}

TEST_CASE("demand shocks", "[scenario]") {
  const auto c = default_config();
  const auto r = apply_demand_shock(c, {ShockKind::demand_rate_intercept, 0.001});
  CHECK_THAT(r.u_gap, WithinAbs(0.022476, 1e-6));
  CHECK_THAT(r.pi_gap, WithinAbs(-6.515e-4, 1e-7));
  CHECK(r.after.u == Catch::Approx(0.04 + r.u_gap));
  CHECK(r.intercept_after == Catch::Approx(0.0222));
  CHECK(r.policy_mode == PolicyMode::active);
  CHECK(r.before.u == 0.04);
  CHECK(r.before.pi == 0.02);
  CHECK(r.tightness_gap < 0.0);

  for (double phi : {0.5, 1.5, 3.0}) {
    auto p = c;
    p.policy.phi = phi;
    for (auto kind : {ShockKind::demand_sigma, ShockKind::demand_rate_intercept}) {
      const auto s = apply_demand_shock(p, {kind, 1e-4});
      CHECK(s.u_gap > 0.0);
      CHECK(s.pi_gap < 0.0);
    }
    const auto d = apply_demand_shock(p, {ShockKind::demand_delta, -1e-4});
    CHECK(d.u_gap > 0.0);
    CHECK(d.pi_gap < 0.0);
  }

  try {
    apply_demand_shock(c, {ShockKind::supply_efficacy, -0.1});
    FAIL("expected invalid_params");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_params);
  }
}

TEST_CASE("supply shocks", "[scenario]") {
  const auto c = default_config();
  const auto r = apply_supply_shock(c, {ShockKind::supply_efficacy, -0.2}, true);
  CHECK_THAT(r.u_star_after, WithinRel(0.05, 1e-14));
  CHECK(r.u_star_before == 0.04);
  // Recentering on the new i* leaves the economy at the new divine point.
  CHECK_THAT(r.u_gap, WithinAbs(0.0, 1e-15));
  CHECK_THAT(r.pi_gap, WithinAbs(0.0, 1e-15));
  CHECK_THAT(r.before_u_gap, WithinAbs(-0.01, 1e-15));

  const auto fixed = apply_supply_shock(c, {ShockKind::supply_efficacy, -0.02}, false);
  CHECK(fixed.u_gap < 0.0);
  CHECK(fixed.pi_gap > 0.0);
  CHECK(fixed.intercept_after == fixed.intercept_before);

  auto passive = c;
  passive.policy.phi = 0.5;
  const auto p = apply_supply_shock(passive, {ShockKind::supply_efficacy, -0.02}, false);
  CHECK(p.policy_mode == PolicyMode::passive);
  CHECK(p.u_gap < 0.0);
  CHECK(p.pi_gap > 0.0);

  CHECK_THROWS_AS(apply_supply_shock(c, {ShockKind::supply_efficacy, -0.95}, false), Error);
}

TEST_CASE("nonlinear refinement", "[scenario]") {
  const auto c = default_config();
  const auto r = apply_demand_shock(c, {ShockKind::demand_rate_intercept, 1e-4});
  REQUIRE(r.after_nonlinear.has_value());
  const auto d = rhs(*r.after_nonlinear, r.config_after);
  CHECK(std::abs(d.du) < 1e-10);
  CHECK(std::abs(d.dpi) < 1e-10);
  CHECK(std::abs(r.after_nonlinear->u - r.after.u) < 1e-4);
  // The old steady state is no longer a rest point.
  const auto b = rhs(r.before, r.config_after);
  CHECK(std::abs(b.du) > 1e-6);
}

TEST_CASE("kink asymmetry", "[scenario]") {
  const auto k = kinked_config();
  const auto rep = kink_asymmetry_report(k, 1e-4);
  CHECK(rep.expansionary.pi_gap > 0.0);
  CHECK(rep.contractionary.pi_gap < 0.0);
  CHECK(rep.expansionary.branch_used == BranchUsed::tight);
  CHECK(rep.contractionary.branch_used == BranchUsed::slack);
  const double kt = oracle::model::phillips_k(k, k.prefs.kappa_plus);
  const double ks = oracle::model::phillips_k(k, k.prefs.kappa_minus);
  const double l = k.prefs.sigma * k.prefs.labor_force, g = k.policy.phi - 1.0;
  const double expected = (kt / (l + g * kt)) / (ks / (l + g * ks));
  CHECK_THAT(rep.ratio, WithinRel(expected, 1e-10));
  CHECK(rep.ratio > 1.0);

  const auto sym = kink_asymmetry_report(default_config(), 1e-4);
  CHECK_THAT(sym.ratio, WithinRel(1.0, 1e-12));
}
