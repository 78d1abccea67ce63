#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

#include "bpc/dynamics.hpp"
#include "bpc/integrator.hpp"

// Linearization of the Euler-Phillips system around the divine steady state
// (u*, pi*), in deviations u_hat = u - u*, pi_hat = pi - pi*:
//
//   [du/dt ]   [ sigma y*                  -(phi - 1)(1 - u*) ] [u_hat ]
//   [dpi/dt] = [ 2(1-u*)/(kappa u*(1-2u*))  delta             ] [pi_hat]

namespace bpc {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

struct LinearizedSystem {
  double a11;
  double a12;
  double a21_tight;  // kappa_plus, inflation above the norm
  double a21_slack;  // kappa_minus, inflation below the norm
  double a22;
  double u_star;
  double pi_star;
  bool kinked;

  /// The symmetric-model entry; by convention the tight branch.
  double a21() const { return a21_tight; }
  double a21_for(Branch b) const { return b == Branch::tight ? a21_tight : a21_slack; }
  Mat2 matrix(Branch b = Branch::tight) const {
    return {{{a11, a12}, {a21_for(b), a22}}};
  }
};

enum class StabilityKind { source, spiral_source, saddle, sink, spiral_sink, degenerate };

std::string_view to_string(StabilityKind kind) noexcept;

struct Classification {
  double trace;
  double determinant;
  double discriminant;  // trace^2 - 4 det
  StabilityKind kind;
  std::array<std::complex<double>, 2> eigenvalues;
  /// Real case: eigenvectors of eigenvalues[0] and eigenvalues[1] (unit
  /// length, eigenvalues sorted ascending). Complex case: real and imaginary
  /// parts of the eigenvector of eigenvalues[0] = mu + i beta, beta > 0.
  std::array<Vec2, 2> eigenvectors;

  bool is_source() const {
    return kind == StabilityKind::source || kind == StabilityKind::spiral_source;
  }
  bool complex_pair() const { return discriminant < 0.0; }
};

struct SigmaCondition {
  double sigma_min;
  bool holds;
};

/// Linearizes around (u*, pi*). The matrix does not depend on the policy
/// intercept; an intercept away from i* shifts the Euler curve, which the
/// scenario engine handles as an intercept shift.
LinearizedSystem linearize(const ModelConfig& config);

/// sigma_min = (2 / (kappa delta l)) (1 - u*) / (u* (1 - 2u*)), using the
/// smaller adjustment cost kappa_plus so the bound covers both branches.
SigmaCondition sigma_condition(const ModelConfig& config);

Classification classify(const Mat2& m);
Classification classify(const LinearizedSystem& lin, Branch branch = Branch::tight);

/// Closed-form solution of dx/dt = M x from deviation x0, evaluated at t.
/// Throws Error{degenerate_eigenstructure} for repeated or zero eigenvalues.
Vec2 linear_solution(const LinearizedSystem& lin, Vec2 x0, double t,
                     Branch branch = Branch::tight);

/// A line cu * u_hat + cpi * pi_hat = 0 through the divine point.
struct Line {
  double cu;
  double cpi;
  /// d pi_hat / d u_hat, empty for a vertical line.
  std::optional<double> dpi_du() const;
  /// d u_hat / d pi_hat, empty for a horizontal line.
  std::optional<double> du_dpi() const;
};

struct Nullclines {
  Line euler;
  Line phillips_tight;  // valid for pi_hat >= 0 (u_hat <= 0)
  Line phillips_slack;  // valid for pi_hat <= 0 (u_hat >= 0)
};

Nullclines nullclines(const LinearizedSystem& lin);

/// d pi_hat / d u_hat of the linearized Phillips curve on one branch:
/// -(2 / (delta kappa u*)) (1 - u*) / (1 - 2u*).
double phillips_slope(const LinearizedSystem& lin, Branch branch);

/// The linearized system as a vector field in levels, with the kinked
/// Phillips row selected by the side of pi*.
PlanarField linear_field(const LinearizedSystem& lin);

}  // namespace bpc
