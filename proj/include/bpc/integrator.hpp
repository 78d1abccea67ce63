#pragma once

#include <functional>
#include <vector>

#include "bpc/dynamics.hpp"

namespace bpc {

struct TrajectoryPoint {
  double t;
  double u;
  double pi;
};

enum class TrajectoryStatus { completed, domain_exit };

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  TrajectoryStatus status = TrajectoryStatus::completed;
  /// Times at which the path crossed the inflation norm on a kinked system.
  /// Each crossing also appears as an extra sample in `points`.
  std::vector<double> kink_crossings;
};

/// A planar vector field whose right-hand side may depend on the side of
/// the inflation norm. `eval` is always called with an explicit branch so a
/// step can be integrated on one smooth piece.
struct PlanarField {
  std::function<Derivatives(EconomyState, Branch)> eval;
  std::function<bool(EconomyState)> in_domain;
  double pi_star = 0.0;
  bool kinked = false;
};

struct IntegrateOptions {
  /// Unemployment must stay in (margin, 1/2 - margin) and above the
  /// feasibility bound by the same margin.
  double boundary_margin = 1e-6;
};

/// Fixed-step classical RK4. On a kinked field, a step that carries inflation
/// across the norm is split at the crossing time (found by bisection) and
/// the remainder is integrated on the other branch. Leaving the domain ends
/// the run with status domain_exit; a non-finite derivative throws
/// Error{step_failure}.
Trajectory integrate(const PlanarField& field, EconomyState start, double t_end,
                     double dt);

/// The nonlinear Euler-Phillips system of `config`.
PlanarField euler_phillips_field(const ModelConfig& config,
                                 IntegrateOptions options = {});

Trajectory integrate(EconomyState start, const ModelConfig& config, double t_end,
                     double dt, IntegrateOptions options = {});

}  // namespace bpc
