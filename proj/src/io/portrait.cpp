#include "bpc/io/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "bpc/error.hpp"
#include "bpc/io/format.hpp"
#include "bpc/linear.hpp"

namespace bpc::io {
namespace {

// Linearized system with the Euler curve shifted by an intercept away from i*:
//   du/dt  = a11 u_hat + a12 pi_hat - (1 - u*) (I - i*)
//   dpi/dt = a21_b u_hat + delta pi_hat
struct ShiftedLinear {
  LinearizedSystem lin;
  double euler_offset;

  explicit ShiftedLinear(const ModelConfig& config)
      : lin(linearize(config)),
        euler_offset((1.0 - lin.u_star) *
                     (policy_intercept(config) - efficient_nominal_rate(config).rate)) {}

  Derivatives eval(EconomyState s, Branch b) const {
    const double uh = s.u - lin.u_star;
    const double ph = s.pi - lin.pi_star;
    return {lin.a11 * uh + lin.a12 * ph - euler_offset, lin.a21_for(b) * uh + lin.a22 * ph};
  }
  Derivatives eval(EconomyState s) const {
    return eval(s, s.pi < lin.pi_star ? Branch::slack : Branch::tight);
  }
  Branch curve_branch(double u_hat) const {
    return u_hat <= 0.0 ? Branch::tight : Branch::slack;
  }

  PlanarField field() const {
    PlanarField f;
    f.pi_star = lin.pi_star;
    f.kinked = lin.kinked;
    f.eval = [self = *this](EconomyState s, Branch b) { return self.eval(s, b); };
    f.in_domain = [](EconomyState s) { return std::isfinite(s.u) && std::isfinite(s.pi); };
    return f;
  }
};

double lerp(double a, double b, int k, int n) {
  if (k == n - 1) return b;
  return a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

void check_bounds(const ModelConfig& config, const PortraitOptions& opt) {
  const auto& b = opt.bounds;
  if (!(b.u_min < b.u_max) || !(b.pi_min < b.pi_max) || !std::isfinite(b.pi_min) ||
      !std::isfinite(b.pi_max)) {
    throw Error(ErrorKind::invalid_params, "portrait bounds must be a non-empty box");
  }
  if (opt.u_points < 2 || opt.pi_points < 2 || opt.nullcline_points < 2) {
    throw Error(ErrorKind::invalid_params, "portrait resolution must be at least 2");
  }
  const double u_floor = min_feasible_unemployment(config.matching);
  if (!(b.u_min > u_floor) || !(b.u_max < 0.5)) {
    throw Error(ErrorKind::domain,
                "portrait unemployment range must lie inside (" + format_short(u_floor) +
                    ", 0.5)");
  }
}

// Euler locus solved for pi at a given u; needs phi != 1 and no ZLB.
double euler_pi_at(double u, const ModelConfig& config) {
  const auto& pr = config.prefs;
  const double phi = config.policy.phi;
  return ((1.0 - u) * pr.sigma * pr.labor_force - pr.delta + policy_intercept(config) -
          phi * pr.pi_star) /
         (1.0 - phi);
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

void write_polyline_csv(const std::filesystem::path& path, const Polyline& line) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io_failure, "cannot write " + path.string());
  out << "u,pi\n";
  for (const auto& p : line) out << format_exact(p.u) << ',' << format_exact(p.pi) << '\n';
  if (!out) throw Error(ErrorKind::io_failure, "write failed: " + path.string());
}

}  // namespace

PortraitBounds default_bounds(const ModelConfig& config) {
  const double u_star = efficient_unemployment(config);
  const double pi_star = config.prefs.pi_star;
  return {0.5 * u_star, 1.5 * u_star, pi_star - 0.002, pi_star + 0.002};
}

PhasePortrait build_phase_portrait(const ModelConfig& config, const PortraitOptions& opt) {
  validate(config);
  check_bounds(config, opt);
  const auto& b = opt.bounds;
  PhasePortrait p{b, opt.linearized, {}, {}, {}, {}, {}};
  const ShiftedLinear lin(config);

  p.field.reserve(static_cast<std::size_t>(opt.u_points * opt.pi_points));
  for (int j = 0; j < opt.pi_points; ++j) {
    const double pi = lerp(b.pi_min, b.pi_max, j, opt.pi_points);
    for (int k = 0; k < opt.u_points; ++k) {
      const double u = lerp(b.u_min, b.u_max, k, opt.u_points);
      const Derivatives d = opt.linearized ? lin.eval({u, pi}) : rhs({u, pi}, config);
      p.field.push_back({u, pi, d.du, d.dpi});
    }
  }

  const int n = opt.nullcline_points;
  const double u_star = lin.lin.u_star;
  const double pi_star = lin.lin.pi_star;

  // Euler locus.
  if (opt.linearized) {
    const auto& m = lin.lin;
    if (m.a11 != 0.0) {
      for (int k = 0; k < n; ++k) {
        const double pi = lerp(b.pi_min, b.pi_max, k, n);
        const double u = u_star + (lin.euler_offset - m.a12 * (pi - pi_star)) / m.a11;
        if (within(u, b.u_min, b.u_max)) p.euler.push_back({u, pi});
      }
    } else if (m.a12 != 0.0) {
      const double pi = pi_star + lin.euler_offset / m.a12;
      if (within(pi, b.pi_min, b.pi_max)) {
        for (int k = 0; k < n; ++k) p.euler.push_back({lerp(b.u_min, b.u_max, k, n), pi});
      }
    }
  } else if (config.prefs.sigma > 0.0) {
    for (int k = 0; k < n; ++k) {
      const double pi = lerp(b.pi_min, b.pi_max, k, n);
      const double u = euler_curve_u(pi, config);
      if (within(u, b.u_min, b.u_max)) p.euler.push_back({u, pi});
    }
  } else if (const auto level = horizontal_euler_level(config)) {
    if (within(*level, b.pi_min, b.pi_max)) {
      for (int k = 0; k < n; ++k) p.euler.push_back({lerp(b.u_min, b.u_max, k, n), *level});
    }
  }

  // Phillips locus, split at u* into its tight and slack halves.
  const auto phillips_at = [&](double u) {
    if (opt.linearized) {
      const double uh = u - u_star;
      return pi_star + phillips_slope(lin.lin, lin.curve_branch(uh)) * uh;
    }
    return phillips_curve_pi(u, config);
  };
  const auto sample_half = [&](double lo, double hi, Polyline& out) {
    if (!(lo <= hi)) return;
    for (int k = 0; k < n; ++k) {
      const double u = lerp(lo, hi, k, n);
      const double pi = phillips_at(u);
      if (within(pi, b.pi_min, b.pi_max)) out.push_back({u, pi});
    }
  };
  sample_half(b.u_min, std::min(u_star, b.u_max), p.phillips_tight);
  sample_half(std::max(u_star, b.u_min), b.u_max, p.phillips_slack);

  for (const auto& seed : opt.seeds) {
    p.trajectories.push_back(opt.linearized
                                 ? integrate(lin.field(), seed, opt.t_end, opt.dt)
                                 : integrate(seed, config, opt.t_end, opt.dt));
  }
  return p;
}

NullclineResiduals nullcline_residuals(const ModelConfig& config,
                                       const PhasePortrait& portrait) {
  NullclineResiduals r{0.0, 0.0};
  const ShiftedLinear lin(config);
  for (const auto& s : portrait.euler) {
    const double res = portrait.linearized ? lin.eval(s).du : euler_rhs(s, config);
    r.euler = std::max(r.euler, std::abs(res));
  }
  for (const auto* line : {&portrait.phillips_tight, &portrait.phillips_slack}) {
    for (const auto& s : *line) {
      double res = 0.0;
      if (portrait.linearized) {
        const double uh = s.u - lin.lin.u_star;
        res = lin.eval(s, lin.curve_branch(uh)).dpi;
      } else {
        res = phillips_curve_residual(s, config);
      }
      r.phillips = std::max(r.phillips, std::abs(res));
    }
  }
  return r;
}

QuadrantCheck check_quadrant_signs(const ModelConfig& config, const PhasePortrait& portrait) {
  QuadrantCheck check;
  const ShiftedLinear lin(config);
  const double phi = config.policy.phi;
  const bool euler_checkable = phi != 1.0 && !config.policy.enforce_zlb;
  constexpr double rel_tol = 1e-9;

  const auto report = [&](const char* what, const FieldSample& f) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: wrong sign at u=%.10g pi=%.10g (du=%.3g dpi=%.3g)",
                  what, f.u, f.pi, f.du, f.dpi);
    check.violations.emplace_back(buf);
  };

  for (const auto& f : portrait.field) {
    double pc = 0.0;
    if (portrait.linearized) {
      const double uh = f.u - lin.lin.u_star;
      pc = lin.lin.pi_star + phillips_slope(lin.lin, lin.curve_branch(uh)) * uh;
    } else {
      pc = phillips_curve_pi(f.u, config);
    }
    const double gap = f.pi - pc;
    if (std::abs(gap) > rel_tol * std::max(std::abs(pc), 1e-3)) {
      ++check.phillips_checked;
      if (sign(f.dpi) != sign(gap)) report("phillips", f);
    }

    if (!euler_checkable) continue;
    double ec = 0.0;
    if (portrait.linearized) {
      const auto& m = lin.lin;
      ec = m.pi_star + (lin.euler_offset - m.a11 * (f.u - m.u_star)) / m.a12;
    } else {
      ec = euler_pi_at(f.u, config);
    }
    const double egap = f.pi - ec;
    if (std::abs(egap) > rel_tol * std::max(std::abs(ec), 1e-3)) {
      ++check.euler_checked;
      if (sign(f.du) != sign(1.0 - phi) * sign(egap)) report("euler", f);
    }
  }
  return check;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,u,pi\n";
  for (const auto& p : trajectory.points) {
    out << format_exact(p.t) << ',' << format_exact(p.u) << ',' << format_exact(p.pi) << '\n';
  }
}

void write_portrait_csv(const std::filesystem::path& dir, const PhasePortrait& portrait) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io_failure, "cannot create " + dir.string());
  {
    std::ofstream out(dir / "field.csv");
    if (!out) throw Error(ErrorKind::io_failure, "cannot write " + (dir / "field.csv").string());
    out << "u,pi,du,dpi\n";
    for (const auto& f : portrait.field) {
      out << format_exact(f.u) << ',' << format_exact(f.pi) << ',' << format_exact(f.du) << ','
          << format_exact(f.dpi) << '\n';
    }
  }
  write_polyline_csv(dir / "nullcline_euler.csv", portrait.euler);
  write_polyline_csv(dir / "nullcline_phillips_tight.csv", portrait.phillips_tight);
  write_polyline_csv(dir / "nullcline_phillips_slack.csv", portrait.phillips_slack);
  for (std::size_t k = 0; k < portrait.trajectories.size(); ++k) {
    const auto path = dir / ("trajectory_" + std::to_string(k) + ".csv");
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io_failure, "cannot write " + path.string());
    write_trajectory_csv(out, portrait.trajectories[k]);
  }
}

void write_portrait_svg(std::ostream& out, const PhasePortrait& portrait) {
  constexpr double width = 640, height = 480, margin = 50;
  const auto& b = portrait.bounds;
  const auto x_of = [&](double u) {
    return margin + (u - b.u_min) / (b.u_max - b.u_min) * (width - 2 * margin);
  };
  const auto y_of = [&](double pi) {
    return height - margin - (pi - b.pi_min) / (b.pi_max - b.pi_min) * (height - 2 * margin);
  };
  char buf[256];
  const auto emit = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out << buf;
  };
  const auto polyline = [&](const Polyline& line, const char* color) {
    if (line.empty()) return;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < line.size(); ++k) {
      emit("%s%.2f,%.2f", k ? " " : "", x_of(line[k].u), y_of(line[k].pi));
    }
    out << "\"/>\n";
  };

  emit("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
       "viewBox=\"0 0 %.0f %.0f\">\n",
       width, height, width, height);
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  emit("<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" fill=\"none\" "
       "stroke=\"black\"/>\n",
       margin, margin, width - 2 * margin, height - 2 * margin);
  emit("<text x=\"%.0f\" y=\"%.0f\" text-anchor=\"middle\" font-size=\"14\">unemployment "
       "u [%.4g, %.4g]</text>\n",
       width / 2, height - 15, b.u_min, b.u_max);
  emit("<text x=\"15\" y=\"%.0f\" text-anchor=\"middle\" font-size=\"14\" "
       "transform=\"rotate(-90 15 %.0f)\">inflation pi [%.4g, %.4g]</text>\n",
       height / 2, height / 2, b.pi_min, b.pi_max);

  // Arrows of uniform length showing direction in screen coordinates.
  const double arrow = 12.0;
  out << "<g stroke=\"#888\" stroke-width=\"1\">\n";
  for (const auto& f : portrait.field) {
    const double dx = f.du / (b.u_max - b.u_min);
    const double dy = -f.dpi / (b.pi_max - b.pi_min);
    const double norm = std::hypot(dx, dy);
    if (!(norm > 0.0) || !std::isfinite(norm)) continue;
    const double ex = dx / norm, ey = dy / norm;
    const double x0 = x_of(f.u), y0 = y_of(f.pi);
    const double x1 = x0 + arrow * ex, y1 = y0 + arrow * ey;
    emit("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>", x0, y0, x1, y1);
    emit("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", x1, y1,
         x1 - 4 * ex + 3 * ey, y1 - 4 * ey - 3 * ex);
  }
  out << "</g>\n";

  polyline(portrait.euler, "#1f77b4");
  polyline(portrait.phillips_tight, "#d62728");
  polyline(portrait.phillips_slack, "#ff7f0e");
  for (const auto& traj : portrait.trajectories) {
    Polyline line;
    for (const auto& pt : traj.points) {
      if (within(pt.u, b.u_min, b.u_max) && within(pt.pi, b.pi_min, b.pi_max)) {
        line.push_back({pt.u, pt.pi});
      }
    }
    polyline(line, "#2ca02c");
  }
  out << "</svg>\n";
}

void write_portrait_svg(const std::filesystem::path& path, const PhasePortrait& portrait) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io_failure, "cannot write " + path.string());
  write_portrait_svg(out, portrait);
}

}  // namespace bpc::io
