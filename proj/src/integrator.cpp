#include "bpc/integrator.hpp"

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include <array>
#include <cmath>
#include <string>

#include "bpc/error.hpp"
#include "root_finding.hpp"

namespace bpc {
namespace {

using State = std::array<double, 2>;
using Stepper = boost::numeric::odeint::runge_kutta4<State>;

// Thrown out of an RK stage that leaves the domain; ends the run normally.
struct LeftDomain {};

EconomyState to_economy(const State& x) { return {x[0], x[1]}; }

State rk4_step(const PlanarField& field, const State& x, double h, Branch branch) {
  Stepper stepper;
  State y = x;
  auto system = [&](const State& s, State& dsdt, double /*t*/) {
    Derivatives d{};
    try {
      d = field.eval(to_economy(s), branch);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::domain || e.kind() == ErrorKind::infeasible) {
        throw LeftDomain{};
      }
      throw;
    }
    if (!std::isfinite(d.du) || !std::isfinite(d.dpi)) {
      throw Error(ErrorKind::step_failure,
                  "non-finite derivative at u=" + std::to_string(s[0]) +
                      ", pi=" + std::to_string(s[1]));
    }
    dsdt = {d.du, d.dpi};
  };
  stepper.do_step(system, y, 0.0, h);
  if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
    throw Error(ErrorKind::step_failure, "RK4 step produced a non-finite state");
  }
  return y;
}

Branch branch_at(const PlanarField& field, const State& x) {
  if (!field.kinked || x[1] > field.pi_star) return Branch::tight;
  if (x[1] < field.pi_star) return Branch::slack;
  // On the norm both branches push inflation the same way; follow it.
  const double dpi = field.eval(to_economy(x), Branch::tight).dpi;
  return dpi < 0.0 ? Branch::slack : Branch::tight;
}

bool crossed(const PlanarField& field, const State& from, const State& to,
             Branch branch) {
  if (!field.kinked || from[1] == field.pi_star) return false;
  return branch == Branch::tight ? to[1] < field.pi_star : to[1] > field.pi_star;
}

}  // namespace

Trajectory integrate(const PlanarField& field, EconomyState start, double t_end,
                     double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt) || !(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::invalid_params, "integration needs dt > 0 and t_end >= 0");
  }
  if (!field.in_domain(start)) {
    throw Error(ErrorKind::domain, "initial state outside the model domain");
  }

  Trajectory traj;
  traj.points.push_back({0.0, start.u, start.pi});
  State x{start.u, start.pi};
  double t = 0.0;
  const auto n_steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));

  try {
    for (long k = 1; k <= n_steps; ++k) {
      const double t_next = k == n_steps ? t_end : static_cast<double>(k) * dt;
      double remaining = t_next - t;
      for (int split = 0; remaining > 0.0 && split < 16; ++split) {
        const Branch branch = branch_at(field, x);
        State y = rk4_step(field, x, remaining, branch);
        if (!crossed(field, x, y, branch)) {
          x = y;
          remaining = 0.0;
          break;
        }
        const auto offset = [&](double h) {
          return rk4_step(field, x, h, branch)[1] - field.pi_star;
        };
        const double h_cross = detail::bisect_root(offset, 0.0, remaining);
        y = rk4_step(field, x, h_cross, branch);
        y[1] = field.pi_star;
        t += h_cross;
        remaining -= h_cross;
        x = y;
        if (!field.in_domain(to_economy(x))) {
          traj.status = TrajectoryStatus::domain_exit;
          return traj;
        }
        traj.kink_crossings.push_back(t);
        traj.points.push_back({t, x[0], x[1]});
      }
      if (remaining > 0.0) {
        throw Error(ErrorKind::step_failure, "too many kink crossings in one step");
      }
      t = t_next;
      if (!field.in_domain(to_economy(x))) {
        traj.status = TrajectoryStatus::domain_exit;
        return traj;
      }
      traj.points.push_back({t, x[0], x[1]});
    }
  } catch (const LeftDomain&) {
    traj.status = TrajectoryStatus::domain_exit;
  }
  return traj;
}

PlanarField euler_phillips_field(const ModelConfig& config, IntegrateOptions options) {
  validate(config);
  PlanarField field;
  field.pi_star = config.prefs.pi_star;
  field.kinked = is_kinked(config.prefs);
  field.eval = [config](EconomyState s, Branch b) {
    return Derivatives{euler_rhs(s, config), phillips_rhs(s, config, b)};
  };
  const double margin = options.boundary_margin;
  const double u_floor = min_feasible_unemployment(config.matching) + margin;
  field.in_domain = [margin, u_floor](EconomyState s) {
    return s.u > margin && s.u > u_floor && s.u < 0.5 - margin && std::isfinite(s.pi);
  };
  return field;
}

Trajectory integrate(EconomyState start, const ModelConfig& config, double t_end,
                     double dt, IntegrateOptions options) {
  return integrate(euler_phillips_field(config, options), start, t_end, dt);
}

}  // namespace bpc
