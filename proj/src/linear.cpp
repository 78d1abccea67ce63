#include "bpc/linear.hpp"

#include <cmath>
#include <string>

#include "bpc/error.hpp"

namespace bpc {
namespace {

constexpr double kDegenerateRelTol = 1e-10;

Vec2 normalized(Vec2 v) {
  const double n = std::hypot(v[0], v[1]);
  v = {v[0] / n, v[1] / n};
  // Fix the sign so output is reproducible.
  if (v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0)) v = {-v[0], -v[1]};
  return v;
}

Vec2 real_eigenvector(const Mat2& m, double lambda) {
  const Vec2 a{m[0][1], lambda - m[0][0]};
  const Vec2 b{lambda - m[1][1], m[1][0]};
  const bool use_a = std::hypot(a[0], a[1]) >= std::hypot(b[0], b[1]);
  return normalized(use_a ? a : b);
}

// Solves [c0 c1] z = x for z.
Vec2 solve_columns(const Vec2& c0, const Vec2& c1, const Vec2& x) {
  const double det = c0[0] * c1[1] - c1[0] * c0[1];
  if (det == 0.0) {
    throw Error(ErrorKind::degenerate_eigenstructure, "eigenvectors are not independent");
  }
  return {(x[0] * c1[1] - c1[0] * x[1]) / det, (c0[0] * x[1] - x[0] * c0[1]) / det};
}

}  // namespace

std::string_view to_string(StabilityKind kind) noexcept {
  switch (kind) {
    case StabilityKind::source: return "source";
    case StabilityKind::spiral_source: return "spiral-source";
    case StabilityKind::saddle: return "saddle";
    case StabilityKind::sink: return "sink";
    case StabilityKind::spiral_sink: return "spiral-sink";
    case StabilityKind::degenerate: return "degenerate";
  }
  return "unknown";
}

LinearizedSystem linearize(const ModelConfig& config) {
  validate(config);
  const auto& pr = config.prefs;
  const double u_star = efficient_rate(config.matching);
  const double employed = 1.0 - u_star;
  // Slope of the Phillips bracket at u*, before dividing by kappa.
  const double bracket_slope = 2.0 * employed / (u_star * (1.0 - 2.0 * u_star));

  LinearizedSystem lin{};
  lin.a11 = pr.sigma * employed * pr.labor_force;
  lin.a12 = -(config.policy.phi - 1.0) * employed;
  lin.a21_tight = bracket_slope / pr.kappa_plus;
  lin.a21_slack = bracket_slope / pr.kappa_minus;
  lin.a22 = pr.delta;
  lin.u_star = u_star;
  lin.pi_star = pr.pi_star;
  lin.kinked = is_kinked(pr);
  return lin;
}

SigmaCondition sigma_condition(const ModelConfig& config) {
  validate(config);
  const auto& pr = config.prefs;
  const double u_star = efficient_rate(config.matching);
  const double sigma_min = 2.0 / (pr.kappa_plus * pr.delta * pr.labor_force) *
                           (1.0 - u_star) / (u_star * (1.0 - 2.0 * u_star));
  return {sigma_min, pr.sigma >= sigma_min};
}

Classification classify(const Mat2& m) {
  Classification c{};
  c.trace = m[0][0] + m[1][1];
  c.determinant = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  c.discriminant = c.trace * c.trace - 4.0 * c.determinant;

  if (c.discriminant >= 0.0) {
    const double root = std::sqrt(c.discriminant);
    const double big = 0.5 * (c.trace + std::copysign(root, c.trace));
    const double small = big != 0.0 ? c.determinant / big : 0.0;
    const double lo = std::min(big, small);
    const double hi = std::max(big, small);
    c.eigenvalues = {std::complex<double>(lo, 0.0), std::complex<double>(hi, 0.0)};
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (c.determinant == 0.0 || hi - lo <= kDegenerateRelTol * scale) {
      c.kind = StabilityKind::degenerate;
      c.eigenvectors = {real_eigenvector(m, lo), real_eigenvector(m, lo)};
      return c;
    }
    c.eigenvectors = {real_eigenvector(m, lo), real_eigenvector(m, hi)};
    if (c.determinant < 0.0) {
      c.kind = StabilityKind::saddle;
    } else {
      c.kind = c.trace > 0.0 ? StabilityKind::source : StabilityKind::sink;
    }
    return c;
  }

  const double mu = 0.5 * c.trace;
  const double beta = 0.5 * std::sqrt(-c.discriminant);
  c.eigenvalues = {std::complex<double>(mu, beta), std::complex<double>(mu, -beta)};
  // Eigenvector of mu + i beta, from whichever row of (M - lambda I) is
  // better conditioned: (m01, lambda - m00) or (lambda - m11, m10).
  const Vec2 re_a{m[0][1], mu - m[0][0]};
  const Vec2 im_a{0.0, beta};
  const Vec2 re_b{mu - m[1][1], m[1][0]};
  const Vec2 im_b{beta, 0.0};
  const double norm_a = re_a[0] * re_a[0] + re_a[1] * re_a[1] + beta * beta;
  const double norm_b = re_b[0] * re_b[0] + re_b[1] * re_b[1] + beta * beta;
  c.eigenvectors = norm_a >= norm_b ? std::array<Vec2, 2>{re_a, im_a}
                                    : std::array<Vec2, 2>{re_b, im_b};
  if (c.trace > 0.0) {
    c.kind = StabilityKind::spiral_source;
  } else if (c.trace < 0.0) {
    c.kind = StabilityKind::spiral_sink;
  } else {
    c.kind = StabilityKind::degenerate;  // center
  }
  return c;
}

Classification classify(const LinearizedSystem& lin, Branch branch) {
  return classify(lin.matrix(branch));
}

Vec2 linear_solution(const LinearizedSystem& lin, Vec2 x0, double t, Branch branch) {
  const Classification c = classify(lin, branch);
  if (c.kind == StabilityKind::degenerate) {
    throw Error(ErrorKind::degenerate_eigenstructure,
                "linear solution needs distinct nonzero eigenvalues");
  }
  const auto& [v1, v2] = c.eigenvectors;
  const Vec2 z = solve_columns(v1, v2, x0);
  if (!c.complex_pair()) {
    const double w1 = z[0] * std::exp(c.eigenvalues[0].real() * t);
    const double w2 = z[1] * std::exp(c.eigenvalues[1].real() * t);
    return {w1 * v1[0] + w2 * v2[0], w1 * v1[1] + w2 * v2[1]};
  }
  const double mu = c.eigenvalues[0].real();
  const double beta = c.eigenvalues[0].imag();
  const double growth = std::exp(mu * t);
  const double cs = std::cos(beta * t);
  const double sn = std::sin(beta * t);
  const double w1 = growth * (cs * z[0] + sn * z[1]);
  const double w2 = growth * (-sn * z[0] + cs * z[1]);
  return {w1 * v1[0] + w2 * v2[0], w1 * v1[1] + w2 * v2[1]};
}

std::optional<double> Line::dpi_du() const {
  if (cpi == 0.0) return std::nullopt;
  return -cu / cpi;
}

std::optional<double> Line::du_dpi() const {
  if (cu == 0.0) return std::nullopt;
  return -cpi / cu;
}

Nullclines nullclines(const LinearizedSystem& lin) {
  return {Line{lin.a11, lin.a12}, Line{lin.a21_tight, lin.a22},
          Line{lin.a21_slack, lin.a22}};
}

double phillips_slope(const LinearizedSystem& lin, Branch branch) {
  return -lin.a21_for(branch) / lin.a22;
}

PlanarField linear_field(const LinearizedSystem& lin) {
  PlanarField field;
  field.pi_star = lin.pi_star;
  field.kinked = lin.kinked;
  field.eval = [lin](EconomyState s, Branch b) {
    const double du_hat = s.u - lin.u_star;
    const double dpi_hat = s.pi - lin.pi_star;
    return Derivatives{lin.a11 * du_hat + lin.a12 * dpi_hat,
                       lin.a21_for(b) * du_hat + lin.a22 * dpi_hat};
  };
  field.in_domain = [](EconomyState s) {
    return std::isfinite(s.u) && std::isfinite(s.pi);
  };
  return field;
}

}  // namespace bpc
