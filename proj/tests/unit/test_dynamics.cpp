#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "bpc/dynamics.hpp"
#include "bpc/error.hpp"
#include "oracles.hpp"

using namespace bpc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::usage;
}

// Euler right-hand side written out from the model definition.
double euler_oracle(double u, double pi, const ModelConfig& c) {
  const double us = c.matching.s / c.matching.omega;
  const double istar = c.prefs.pi_star + c.prefs.delta - c.prefs.sigma * (1 - us) * c.prefs.labor_force;
  const double base = c.policy.intercept.value_or(istar);
  double i = base + c.policy.phi * (pi - c.prefs.pi_star);
  if (c.policy.enforce_zlb) i = std::max(i, 0.0);
  return (1 - u) * (c.prefs.delta - (i - pi + c.prefs.sigma * (1 - u) * c.prefs.labor_force));
}

}  // namespace

TEST_CASE("defaults and validation", "[dynamics]") {
  const auto c = default_config();
  CHECK(c.matching.s == 0.04);
  CHECK(c.prefs.kappa_plus == 60000);
  CHECK(c.policy.phi == 1.5);
  CHECK_FALSE(c.policy.intercept.has_value());
  CHECK_NOTHROW(validate(c));

  auto bad = c;
  bad.prefs.delta = 0.0;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::invalid_params);
  bad = c;
  bad.prefs.sigma = -0.01;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::invalid_params);
  bad = c;
  bad.prefs.kappa_minus = 0.0;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::invalid_params);
  bad = c;
  bad.policy.phi = -1.0;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::invalid_params);
  bad = c;
  bad.matching.omega = 0.05;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::invalid_params);
}

TEST_CASE("efficient nominal rate", "[dynamics]") {
  auto c = default_config();
  const auto r = efficient_nominal_rate(c);
  CHECK_THAT(r.rate, WithinRel(0.0212, 1e-14));
  CHECK_FALSE(r.zlb_violation);
  CHECK(policy_intercept(c) == r.rate);

  c.prefs.sigma = 0.0;
  CHECK_THAT(efficient_nominal_rate(c).rate, WithinRel(0.05, 1e-15));

  c.prefs.sigma = 0.1;
  const auto neg = efficient_nominal_rate(c);
  CHECK(neg.rate < 0.0);
  CHECK(neg.zlb_violation);

  c = default_config();
  c.policy.intercept = 0.01;
  CHECK(policy_intercept(c) == 0.01);
  CHECK_THAT(policy_rate(0.03, c), WithinRel(0.025, 1e-14));
  c.policy.enforce_zlb = true;
  CHECK(policy_rate(0.0, c) == 0.0);
}

TEST_CASE("Euler equation", "[dynamics]") {
  const auto c = default_config();
  CHECK_THAT(euler_rhs({0.05, 0.02}, c), WithinRel(2.85e-4, 1e-12));
  CHECK_THAT(euler_rhs({0.04, 0.02}, c), WithinAbs(0.0, 1e-17));
  CHECK_THAT(euler_curve_u(0.03, c), WithinAbs(0.2067, 1e-4));
  CHECK_THAT(euler_curve_u(0.02, c), WithinRel(0.04, 1e-12));

  oracle::Draws draws(11);
  for (int k = 0; k < 200; ++k) {
    const auto rc = draws.config();
    const double u = draws.uniform(0.01, 0.3);
    const double pi = draws.uniform(-0.02, 0.06);
    CHECK_THAT(euler_rhs({u, pi}, rc), WithinAbs(euler_oracle(u, pi, rc), 1e-15));
  }

  SECTION("sigma = 0 makes the locus horizontal") {
    auto z = default_config();
    z.prefs.sigma = 0.0;
    CHECK(kind_of([&] { euler_curve_u(0.02, z); }) == ErrorKind::degenerate_curve);
    const auto level = horizontal_euler_level(z);
    REQUIRE(level.has_value());
    CHECK_THAT(*level, WithinAbs(0.02, 1e-15));
    z.policy.phi = 1.0;
    CHECK_FALSE(horizontal_euler_level(z).has_value());
  }
}

TEST_CASE("Phillips curve", "[dynamics]") {
  const auto c = default_config();
  const double expected = -(1.0 / 60000) * (1 - (0.05 / 0.032) * (1 - 0.082) / 0.9);
  CHECK_THAT(phillips_rhs({0.05, 0.02}, c), WithinRel(expected, 1e-12));
  CHECK_THAT(phillips_bracket(0.04, c.matching), WithinAbs(0.0, 1e-15));
  CHECK(phillips_bracket(0.03, c.matching) > 0.0);
  CHECK(phillips_bracket(0.06, c.matching) < 0.0);
  // Tight labor market at the norm pushes inflation down, slack pushes it up.
  CHECK(phillips_rhs({0.03, 0.02}, c) < 0.0);
  CHECK(phillips_rhs({0.06, 0.02}, c) > 0.0);

  oracle::Draws draws(12);
  for (int k = 0; k < 200; ++k) {
    const auto rc = draws.config();
    const double us = rc.matching.s / rc.matching.omega;
    const double u = draws.uniform(us * 0.6, std::min(0.45, us * 1.6));
    const double pi = draws.uniform(-0.02, 0.06);
    CHECK_THAT(phillips_rhs({u, pi}, rc), WithinAbs(oracle::model::pi_dot(u, pi, rc), 1e-14));
  }

  SECTION("curve and its inverse") {
    for (double u : {0.03, 0.035, 0.04, 0.05, 0.08}) {
      const double pi = phillips_curve_pi(u, c);
      CHECK_THAT(phillips_rhs({u, pi}, c), WithinAbs(0.0, 1e-15));
      CHECK_THAT(phillips_curve_u(pi, c), WithinRel(u, 1e-10));
      CHECK_THAT(phillips_curve_residual({u, pi}, c), WithinAbs(0.0, 1e-12));
    }
    CHECK(phillips_curve_pi(0.04, c) == 0.02);
  }

  SECTION("kinked branches") {
    auto k = default_config();
    k.prefs.kappa_minus = 120000;
    CHECK(is_kinked(k.prefs));
    CHECK(branch_for(0.021, k.prefs) == Branch::tight);
    CHECK(branch_for(0.02, k.prefs) == Branch::tight);
    CHECK(branch_for(0.019, k.prefs) == Branch::slack);
    CHECK(kappa(Branch::slack, k.prefs) == 120000);
    // Below the norm the slack-side cost governs.
    const double pi_slack = phillips_curve_pi(0.05, k);
    const double pi_sym = phillips_curve_pi(0.05, c);
    CHECK_THAT(pi_slack - 0.02, WithinRel(0.5 * (pi_sym - 0.02), 1e-12));
    // Above it the tight-side cost governs and nothing changes.
    CHECK_THAT(phillips_curve_pi(0.03, k), WithinRel(phillips_curve_pi(0.03, c), 1e-14));
    // Explicit branch evaluation matches the automatic choice.
    CHECK(phillips_rhs({0.05, 0.019}, k, Branch::slack) == phillips_rhs({0.05, 0.019}, k));
  }

  SECTION("rhs outside the domain") {
    CHECK(kind_of([&] { rhs({0.6, 0.02}, c); }) == ErrorKind::domain);
    CHECK(kind_of([&] { rhs({0.0, 0.02}, c); }) == ErrorKind::domain);
  }
}

TEST_CASE("divine coincidence at the steady state", "[dynamics]") {
  oracle::Draws draws(13);
  for (int k = 0; k < 100; ++k) {
    const auto rc = draws.config();
    const EconomyState ss{efficient_unemployment(rc), rc.prefs.pi_star};
    const auto d = rhs(ss, rc);
    CHECK_THAT(d.du, WithinAbs(0.0, 1e-15));
    CHECK_THAT(d.dpi, WithinAbs(0.0, 1e-15));
  }
}
