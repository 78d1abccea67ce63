#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bpc/error.hpp"
#include "bpc/io/portrait.hpp"
#include "oracles.hpp"

using namespace bpc;
using namespace bpc::io;
using Catch::Matchers::WithinAbs;

namespace {

PortraitOptions options_for(const ModelConfig& c) {
  PortraitOptions o;
  o.bounds = default_bounds(c);
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Phillips-curve inflation at u from the oracle, by bisection in pi.
double oracle_phillips_pi(double u, const ModelConfig& c) {
  return oracle::bisect([&](double pi) { return oracle::model::pi_dot(u, pi, c); }, -1.0, 1.0);
}

}  // namespace

TEST_CASE("default bounds", "[portrait]") {
  const auto b = default_bounds(default_config());
  CHECK(b.u_min == Catch::Approx(0.02));
  CHECK(b.u_max == Catch::Approx(0.06));
  CHECK(b.pi_min == Catch::Approx(0.018));
  CHECK(b.pi_max == Catch::Approx(0.022));
}

TEST_CASE("field and nullclines", "[portrait]") {
  const auto c = default_config();
  const auto p = build_phase_portrait(c, options_for(c));
  CHECK(p.field.size() == 21 * 21);
  CHECK(p.trajectories.empty());
  CHECK_FALSE(p.linearized);
  CHECK(p.field[1].u > p.field[0].u);
  CHECK(p.field[1].pi == p.field[0].pi);

  const auto r = nullcline_residuals(c, p);
  CHECK(r.euler < 1e-8);
  CHECK(r.phillips < 1e-8);
  for (const auto& s : p.phillips_tight) CHECK(s.u <= 0.04);
  for (const auto& s : p.phillips_slack) CHECK(s.u >= 0.04);

  SECTION("arrow signs agree with an independent Phillips curve") {
    int checked = 0;
    for (const auto& s : p.field) {
      const double pi_p = oracle_phillips_pi(s.u, c);
      if (std::abs(s.pi - pi_p) < 1e-9) continue;
      CHECK((s.dpi > 0) == (s.pi > pi_p));
      ++checked;
    }
    CHECK(checked > 400);
    const auto q = check_quadrant_signs(c, p);
    CHECK(q.ok());
    CHECK(q.phillips_checked > 400);
    CHECK(q.euler_checked > 400);
  }
}

TEST_CASE("passive policy reverses the Euler arrows", "[portrait]") {
  auto c = default_config();
  c.policy.phi = 0.5;
  const auto p = build_phase_portrait(c, options_for(c));
  const auto q = check_quadrant_signs(c, p);
  CHECK(q.ok());
  int above = 0;
  for (const auto& s : p.field) {
    // Euler curve in the (u, pi) plane written out directly.
    const auto& pr = c.prefs;
    const double istar = pr.pi_star + pr.delta - pr.sigma * (1 - 0.04);
    const double pi_e = ((1 - s.u) * pr.sigma - pr.delta + istar - 0.5 * pr.pi_star) / 0.5;
    if (s.pi > pi_e + 1e-9) {
      CHECK(s.du > 0.0);
      ++above;
    }
  }
  CHECK(above > 0);
}

TEST_CASE("linearized and kinked portraits", "[portrait]") {
  auto c = default_config();
  c.prefs.kappa_minus = 120000;
  auto o = options_for(c);
  const auto p = build_phase_portrait(c, o);
  CHECK(check_quadrant_signs(c, p).ok());
  CHECK(nullcline_residuals(c, p).phillips < 1e-8);

  o.linearized = true;
  const auto l = build_phase_portrait(c, o);
  CHECK(l.linearized);
  const auto r = nullcline_residuals(c, l);
  CHECK(r.euler < 1e-8);
  CHECK(r.phillips < 1e-8);
}

TEST_CASE("trajectories and determinism", "[portrait]") {
  const auto c = default_config();
  auto o = options_for(c);
  o.seeds = {{0.041, 0.02}, {0.039, 0.0201}};
  o.t_end = 20.0;
  const auto p = build_phase_portrait(c, o);
  REQUIRE(p.trajectories.size() == 2);
  CHECK(p.trajectories[0].points.front().u == 0.041);

  const auto dir = std::filesystem::temp_directory_path() / "bpc_portrait_test";
  std::filesystem::remove_all(dir);
  write_portrait_csv(dir / "a", p);
  write_portrait_csv(dir / "b", build_phase_portrait(c, o));
  for (const char* f : {"field.csv", "nullcline_euler.csv", "nullcline_phillips_tight.csv",
                        "nullcline_phillips_slack.csv", "trajectory_0.csv", "trajectory_1.csv"}) {
    const auto a = slurp(dir / "a" / f);
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(dir / "b" / f));
  }
  std::ostringstream s1, s2;
  write_portrait_svg(s1, p);
  write_portrait_svg(s2, build_phase_portrait(c, o));
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().find("<svg") != std::string::npos);

  std::ostringstream t;
  write_trajectory_csv(t, p.trajectories[0]);
  CHECK(t.str().rfind("t,u,pi\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("invalid portrait requests", "[portrait]") {
  const auto c = default_config();
  auto o = options_for(c);
  o.bounds.u_max = o.bounds.u_min;
  CHECK_THROWS_MATCHES(build_phase_portrait(c, o), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.kind() == ErrorKind::invalid_params; }));
  o = options_for(c);
  o.bounds.u_max = 0.6;
  CHECK_THROWS_MATCHES(build_phase_portrait(c, o), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.kind() == ErrorKind::domain; }));
  o = options_for(c);
  o.u_points = 1;
  CHECK_THROWS_AS(build_phase_portrait(c, o), Error);
}
