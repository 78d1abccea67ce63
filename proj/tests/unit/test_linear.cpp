#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "bpc/error.hpp"
#include "bpc/linear.hpp"
#include "oracles.hpp"

using namespace bpc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

oracle::M2 to_oracle(const Mat2& m) { return {{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}}; }

}  // namespace

TEST_CASE("linearized matrix", "[linear]") {
  const auto c = default_config();
  const auto lin = linearize(c);
  CHECK_THAT(lin.a11, WithinRel(0.0288, 1e-14));
  CHECK_THAT(lin.a12, WithinRel(-0.48, 1e-14));
  CHECK_THAT(lin.a21(), WithinRel(8.6957e-4, 1e-4));
  CHECK_THAT(lin.a21(), WithinRel(1.92 / 2208.0, 1e-14));
  CHECK_THAT(lin.a22, WithinRel(0.03, 1e-15));
  CHECK_FALSE(lin.kinked);
  CHECK(lin.u_star == 0.04);

  auto p1 = c;
  p1.policy.phi = 1.0;
  CHECK(linearize(p1).a12 == 0.0);

  SECTION("matches a finite-difference Jacobian of the nonlinear field") {
    oracle::Draws draws(31);
    for (int k = 0; k < 50; ++k) {
      auto rc = draws.config();
      rc.prefs.kappa_minus = rc.prefs.kappa_plus;
      const auto l = linearize(rc);
      const double us = l.u_star;
      const auto j = oracle::jacobian(
          [&](oracle::V2 x) {
            return oracle::V2{euler_rhs({x[0], x[1]}, rc), oracle::model::pi_dot(x[0], x[1], rc)};
          },
          {us, rc.prefs.pi_star}, {us * 1e-5, 1e-7});
      const auto m = l.matrix();
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t col = 0; col < 2; ++col) {
          CHECK_THAT(m[r][col], WithinAbs(j[r][col], 1e-6 * (std::abs(j[r][col]) + 1e-6)));
        }
      }
    }
  }
}

TEST_CASE("classification", "[linear]") {
  const auto c = default_config();
  const auto cl = classify(linearize(c));
  CHECK_THAT(cl.trace, WithinRel(0.0588, 1e-13));
  CHECK_THAT(cl.determinant, WithinRel(1.2814e-3, 1e-4));
  CHECK(cl.kind == StabilityKind::spiral_source);
  CHECK(cl.complex_pair());
  CHECK_THAT(cl.eigenvalues[0].real(), WithinRel(0.0294, 1e-12));
  CHECK_THAT(std::abs(cl.eigenvalues[0].imag()), WithinRel(0.02042, 1e-3));
  CHECK(cl.eigenvalues[1] == std::conj(cl.eigenvalues[0]));
  CHECK(to_string(cl.kind) == "spiral-source");

  const auto d = classify(Mat2{{{1.0, 0.0}, {0.0, 2.0}}});
  CHECK(d.kind == StabilityKind::source);
  CHECK(d.eigenvalues[0].real() == 1.0);
  CHECK(d.eigenvalues[1].real() == 2.0);

  CHECK(classify(Mat2{{{-1.0, 0.0}, {0.0, 2.0}}}).kind == StabilityKind::saddle);
  CHECK(classify(Mat2{{{-1.0, 0.0}, {0.0, -2.0}}}).kind == StabilityKind::sink);
  CHECK(classify(Mat2{{{-1.0, -1.0}, {1.0, -1.0}}}).kind == StabilityKind::spiral_sink);
  CHECK(classify(Mat2{{{0.0, 0.0}, {0.0, 1.0}}}).kind == StabilityKind::degenerate);

  SECTION("source for every phi under the sigma condition") {
    for (double phi = 0.0; phi <= 3.0; phi += 0.05) {
      auto p = c;
      p.policy.phi = phi;
      CHECK(classify(linearize(p)).is_source());
    }
  }

  SECTION("saddle when sigma falls below the bound under passive policy") {
    auto p = c;
    p.policy.phi = 0.0;
    p.prefs.sigma = sigma_condition(c).sigma_min / 2;
    CHECK_FALSE(sigma_condition(p).holds);
    CHECK(classify(linearize(p)).kind == StabilityKind::saddle);
  }

  SECTION("eigenvectors satisfy the eigen equation") {
    auto p = c;
    p.policy.phi = 0.5;
    const auto lin = linearize(p);
    const auto r = classify(lin);
    REQUIRE(r.kind == StabilityKind::source);
    const auto m = lin.matrix();
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& v = r.eigenvectors[k];
      const double lam = r.eigenvalues[k].real();
      CHECK_THAT(m[0][0] * v[0] + m[0][1] * v[1], WithinAbs(lam * v[0], 1e-14));
      CHECK_THAT(m[1][0] * v[0] + m[1][1] * v[1], WithinAbs(lam * v[1], 1e-14));
      CHECK_THAT(std::hypot(v[0], v[1]), WithinRel(1.0, 1e-14));
    }
  }
}

TEST_CASE("sigma condition", "[linear]") {
  auto c = default_config();
  const auto sc = sigma_condition(c);
  CHECK_THAT(sc.sigma_min, WithinRel(1.92 / 66.24, 1e-13));
  CHECK_THAT(sc.sigma_min, WithinAbs(0.028986, 1e-6));
  CHECK(sc.holds);
  c.prefs.kappa_plus = c.prefs.kappa_minus = 1e12;
  CHECK(sigma_condition(c).sigma_min < 1e-8);
  c = default_config();
  c.prefs.sigma = 0.02;
  CHECK_FALSE(sigma_condition(c).holds);
}

TEST_CASE("closed-form solution", "[linear]") {
  const auto c = default_config();
  const auto lin = linearize(c);
  for (double t : {0.0, 1.0, 10.0}) {
    const auto z = linear_solution(lin, {0.0, 0.0}, t);
    CHECK(z[0] == 0.0);
    CHECK(z[1] == 0.0);
  }
  const auto x0 = linear_solution(lin, {1e-3, 2e-4}, 0.0);
  CHECK_THAT(x0[0], WithinAbs(1e-3, 1e-18));
  CHECK_THAT(x0[1], WithinAbs(2e-4, 1e-18));

  const auto m = to_oracle(lin.matrix());
  const auto ref = oracle::rk4(oracle::linear(m), {1e-3, 0.0}, 1.0, 1e-4);
  const auto x = linear_solution(lin, {1e-3, 0.0}, 1.0);
  CHECK_THAT(x[0], WithinAbs(ref[0], 1e-8 * 1e-3));
  CHECK_THAT(x[1], WithinAbs(ref[1], 1e-8 * 1e-3));

  SECTION("real regime aligns with the dominant eigenvector") {
    auto p = c;
    p.policy.phi = 0.5;
    const auto l = linearize(p);
    const auto r = classify(l);
    REQUIRE_FALSE(r.complex_pair());
    const auto v2 = r.eigenvectors[1];
    const auto xt = linear_solution(l, {1e-3, 1e-4}, 2000.0);
    const double n = std::hypot(xt[0], xt[1]);
    CHECK_THAT(std::abs(xt[0] * v2[0] + xt[1] * v2[1]) / n, WithinAbs(1.0, 1e-9));
  }

  SECTION("repeated eigenvalue") {
    auto p = c;
    LinearizedSystem deg = linearize(p);
    deg.a11 = 1.0;
    deg.a12 = 0.0;
    deg.a21_tight = deg.a21_slack = 0.0;
    deg.a22 = 1.0;
    try {
      linear_solution(deg, {1.0, 1.0}, 1.0);
      FAIL("expected degenerate_eigenstructure");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::degenerate_eigenstructure);
    }
  }
}

TEST_CASE("nullclines", "[linear]") {
  const auto c = default_config();
  const auto lin = linearize(c);
  const auto n = nullclines(lin);
  CHECK_THAT(*n.phillips_tight.dpi_du(), WithinAbs(-0.028986, 1e-6));
  CHECK_THAT(phillips_slope(lin, Branch::tight), WithinRel(*n.phillips_tight.dpi_du(), 1e-14));
  CHECK_THAT(*n.euler.du_dpi(), WithinRel(0.48 / 0.0288, 1e-13));

  auto p0 = c;
  p0.policy.phi = 0.0;
  CHECK_THAT(*nullclines(linearize(p0)).euler.du_dpi(), WithinRel(-1.0 / 0.03, 1e-13));

  auto p1 = c;
  p1.policy.phi = 1.0;
  CHECK_FALSE(nullclines(linearize(p1)).euler.dpi_du().has_value());

  auto s0 = c;
  s0.prefs.sigma = 0.0;
  CHECK_FALSE(nullclines(linearize(s0)).euler.du_dpi().has_value());

  SECTION("kinked slopes") {
    auto k = c;
    k.prefs.kappa_minus = 3 * k.prefs.kappa_plus;
    const auto lk = linearize(k);
    CHECK(lk.kinked);
    CHECK_THAT(phillips_slope(lk, Branch::tight) / phillips_slope(lk, Branch::slack),
               WithinRel(3.0, 1e-14));
    CHECK_THAT(phillips_slope(lk, Branch::tight),
               WithinRel(-oracle::model::phillips_k(k, k.prefs.kappa_plus), 1e-13));
  }
}

TEST_CASE("linear field in levels", "[linear]") {
  const auto c = default_config();
  const auto lin = linearize(c);
  const auto f = linear_field(lin);
  const auto d = f.eval({0.05, 0.021}, Branch::tight);
  CHECK_THAT(d.du, WithinAbs(lin.a11 * 0.01 + lin.a12 * 0.001, 1e-17));
  CHECK_THAT(d.dpi, WithinAbs(lin.a21() * 0.01 + lin.a22 * 0.001, 1e-17));
  const auto z = f.eval({0.04, 0.02}, Branch::tight);
  CHECK(z.du == 0.0);
  CHECK(z.dpi == 0.0);
}
