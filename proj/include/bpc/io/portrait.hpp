#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bpc/dynamics.hpp"
#include "bpc/integrator.hpp"

// Phase diagrams in the (u, pi) plane: a sampled vector field, the
// du/dt = 0 and dpi/dt = 0 loci, and optional trajectories.

namespace bpc::io {

struct PortraitBounds {
  double u_min;
  double u_max;
  double pi_min;
  double pi_max;
};

/// u in [u*/2, 3u*/2], pi in pi* +/- 0.002.
PortraitBounds default_bounds(const ModelConfig& config);

struct PortraitOptions {
  PortraitBounds bounds;
  int u_points = 21;
  int pi_points = 21;
  /// Sample the linearized system (including the Euler shift from an
  /// intercept away from i*) instead of the nonlinear one.
  bool linearized = false;
  std::vector<EconomyState> seeds;
  double t_end = 40.0;
  double dt = 0.05;
  int nullcline_points = 201;
};

struct FieldSample {
  double u;
  double pi;
  double du;
  double dpi;
};

using Polyline = std::vector<EconomyState>;

struct PhasePortrait {
  PortraitBounds bounds;
  bool linearized;
  std::vector<FieldSample> field;  // row-major, u varies fastest
  Polyline euler;
  Polyline phillips_tight;  // u <= u*
  Polyline phillips_slack;  // u >= u*
  std::vector<Trajectory> trajectories;
};

/// Throws Error{domain} when the bounds leave the model domain and
/// Error{invalid_params} for an empty or inverted box.
PhasePortrait build_phase_portrait(const ModelConfig& config, const PortraitOptions& options);

/// Largest |residual| of the emitted nullcline points, re-evaluated through
/// the dynamics (du/dt for the Euler locus, the Phillips-curve residual for
/// the Phillips branches; linear residuals in linearized mode).
struct NullclineResiduals {
  double euler;
  double phillips;
};
NullclineResiduals nullcline_residuals(const ModelConfig& config, const PhasePortrait& portrait);

/// Checks the arrows on the grid: above the Phillips curve dpi/dt > 0 and
/// below it dpi/dt < 0; above the Euler curve sign(du/dt) = sign(1 - phi)
/// and below it the opposite. Points within a relative 1e-9 of a curve are
/// skipped, as is the Euler check when phi = 1 or the ZLB is enforced.
struct QuadrantCheck {
  int phillips_checked = 0;
  int euler_checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
QuadrantCheck check_quadrant_signs(const ModelConfig& config, const PhasePortrait& portrait);

/// Writes field.csv, nullcline_euler.csv, nullcline_phillips_tight.csv,
/// nullcline_phillips_slack.csv and trajectory_<k>.csv into `dir`.
void write_portrait_csv(const std::filesystem::path& dir, const PhasePortrait& portrait);

void write_portrait_svg(std::ostream& out, const PhasePortrait& portrait);
void write_portrait_svg(const std::filesystem::path& path, const PhasePortrait& portrait);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace bpc::io
