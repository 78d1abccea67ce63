#include "bpc/cli.hpp"

#include <CLI/CLI11.hpp>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bpc/error.hpp"
#include "bpc/io/config.hpp"
#include "bpc/io/fit.hpp"
#include "bpc/io/format.hpp"
#include "bpc/io/portrait.hpp"
#include "bpc/io/series.hpp"
#include "bpc/linear.hpp"
#include "bpc/matching.hpp"
#include "bpc/scenario.hpp"
#include "bpc/validation.hpp"

namespace bpc {
namespace {

using io::format_exact;
using io::format_short;

enum Exit { ok = 0, usage_error = 1, model_error = 2, io_error = 3 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage: return usage_error;
    case ErrorKind::io_failure: return io_error;
    default: return model_error;
  }
}

std::vector<double> parse_numbers(const std::string& text, std::size_t count,
                                  const char* what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + comma, x);
    if (ec != std::errc{} || ptr != text.data() + comma) {
      throw Error(ErrorKind::usage, std::string(what) + ": cannot parse '" + text + "'");
    }
    values.push_back(x);
    start = comma + 1;
  }
  if (values.size() != count) {
    throw Error(ErrorKind::usage, std::string(what) + " expects " + std::to_string(count) +
                                      " comma-separated numbers");
  }
  return values;
}

// Writes to the named file, or to `out` when the name is empty or "-".
template <typename F>
void with_output(const std::string& path, std::ostream& out, F&& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::io_failure, "cannot write " + path);
  write(file);
  if (!file) throw Error(ErrorKind::io_failure, "write failed: " + path);
}

void print_kv(std::ostream& out, const std::string& key, double value) {
  out << key << " = " << format_short(value) << '\n';
}

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
};

ModelConfig resolve_config(const Options& o) {
  ModelConfig config = o.config_path.empty() ? default_config() : io::load_config(o.config_path);
  for (const auto& s : o.overrides) io::apply_override(config, s);
  validate(config);
  return config;
}

void cmd_steady(const ModelConfig& c, std::ostream& out) {
  const auto alloc = efficient_allocation(c.matching);
  const auto bounds = tightness_bounds(c.matching);
  const auto rate = efficient_nominal_rate(c);
  print_kv(out, "u*", alloc.u_star);
  print_kv(out, "v*", alloc.v_star);
  print_kv(out, "theta*", alloc.theta_star);
  print_kv(out, "theta_lower", bounds.lower);
  print_kv(out, "theta_upper", bounds.upper);
  print_kv(out, "tau*", recruiter_producer_ratio(1.0, c.matching));
  print_kv(out, "i*", rate.rate);
  out << "zlb_violation = " << (rate.zlb_violation ? "true" : "false") << '\n';
  print_kv(out, "policy_intercept", policy_intercept(c));
  out << "divine_point = (" << format_short(alloc.u_star) << ", "
      << format_short(c.prefs.pi_star) << ")\n";
}

void print_classification(std::ostream& out, const std::string& prefix,
                          const LinearizedSystem& lin, Branch b) {
  const auto m = lin.matrix(b);
  const auto cl = classify(m);
  out << prefix << "M = [[" << format_short(m[0][0]) << ", " << format_short(m[0][1])
      << "], [" << format_short(m[1][0]) << ", " << format_short(m[1][1]) << "]]\n";
  print_kv(out, prefix + "trace", cl.trace);
  print_kv(out, prefix + "determinant", cl.determinant);
  print_kv(out, prefix + "discriminant", cl.discriminant);
  for (int k = 0; k < 2; ++k) {
    const auto& ev = cl.eigenvalues[static_cast<std::size_t>(k)];
    out << prefix << "eigenvalue_" << k + 1 << " = " << format_short(ev.real());
    if (ev.imag() != 0.0) {
      out << (ev.imag() > 0 ? " + " : " - ") << format_short(std::abs(ev.imag())) << "i";
    }
    out << '\n';
  }
  out << prefix << "kind = " << to_string(cl.kind) << '\n';
}

void cmd_classify(const ModelConfig& c, std::ostream& out) {
  const auto lin = linearize(c);
  if (lin.kinked) {
    print_classification(out, "tight.", lin, Branch::tight);
    print_classification(out, "slack.", lin, Branch::slack);
  } else {
    print_classification(out, "", lin, Branch::tight);
  }
  const auto sc = sigma_condition(c);
  print_kv(out, "sigma_min", sc.sigma_min);
  out << "sigma_condition = " << (sc.holds ? "holds" : "fails") << '\n';
  out << "policy = " << to_string(policy_mode(c.policy)) << '\n';
  const auto nc = nullclines(lin);
  if (const auto s = nc.euler.du_dpi()) print_kv(out, "euler_du_dpi", *s);
  print_kv(out, "phillips_slope_tight", phillips_slope(lin, Branch::tight));
  print_kv(out, "phillips_slope_slack", phillips_slope(lin, Branch::slack));
}

void print_result_text(std::ostream& out, const std::string& prefix, const ScenarioResult& r) {
  print_kv(out, prefix + "u_before", r.before.u);
  print_kv(out, prefix + "pi_before", r.before.pi);
  print_kv(out, prefix + "u_after", r.after.u);
  print_kv(out, prefix + "pi_after", r.after.pi);
  print_kv(out, prefix + "u_star_after", r.u_star_after);
  print_kv(out, prefix + "u_gap", r.u_gap);
  print_kv(out, prefix + "pi_gap", r.pi_gap);
  print_kv(out, prefix + "tightness_gap", r.tightness_gap);
  out << prefix << "branch = " << to_string(r.branch_used) << '\n';
  out << prefix << "policy = " << to_string(r.policy_mode) << '\n';
  print_kv(out, prefix + "intercept_before", r.intercept_before);
  print_kv(out, prefix + "intercept_after", r.intercept_after);
  print_kv(out, prefix + "i_star_after", r.i_star_after);
  if (r.after_nonlinear) {
    print_kv(out, prefix + "u_after_nonlinear", r.after_nonlinear->u);
    print_kv(out, prefix + "pi_after_nonlinear", r.after_nonlinear->pi);
  }
}

void print_result_csv_header(std::ostream& out) {
  out << "label,u_before,pi_before,u_after,pi_after,u_star_after,u_gap,pi_gap,"
         "tightness_gap,branch,policy\n";
}

void print_result_csv(std::ostream& out, const std::string& label, const ScenarioResult& r) {
  out << label << ',' << format_exact(r.before.u) << ',' << format_exact(r.before.pi) << ','
      << format_exact(r.after.u) << ',' << format_exact(r.after.pi) << ','
      << format_exact(r.u_star_after) << ',' << format_exact(r.u_gap) << ','
      << format_exact(r.pi_gap) << ',' << format_exact(r.tightness_gap) << ','
      << to_string(r.branch_used) << ',' << to_string(r.policy_mode) << '\n';
}

void print_fit(std::ostream& out, const io::KinkedFit& f) {
  print_kv(out, "slope_tight", f.slope_tight);
  print_kv(out, "slope_slack", f.slope_slack);
  print_kv(out, "intercept", f.intercept);
  out << "kink_at_origin = " << (f.kink_at_origin ? "true" : "false") << '\n';
  out << "n_tight = " << f.n_tight << "\nn_slack = " << f.n_slack << '\n';
  print_kv(out, "ssr", f.ssr);
  print_kv(out, "rmse", f.rmse);
  print_kv(out, "r_squared", f.r_squared);
  out << "steeper_when_tight = " << (f.steeper_when_tight ? "true" : "false") << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beveridge-Phillips model toolkit: steady states, stability, phase "
               "diagrams, shocks and empirical gaps"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_option("-c,--config", opts.config_path, "Model configuration (.toml or .json)");
  app.add_option("--set", opts.overrides, "Override a config value, e.g. policy.phi=0.5")
      ->take_all();

  auto* steady = app.add_subcommand("steady", "Efficient allocation, i* and the divine point");
  auto* classify_cmd =
      app.add_subcommand("classify", "Linearized matrix, eigenvalues, kind, sigma-condition");

  auto* phase = app.add_subcommand("phase", "Write phase-portrait CSV (and optional SVG) files");
  std::string phase_dir;
  std::string phase_svg;
  std::string phase_bounds;
  std::vector<std::string> phase_seeds;
  io::PortraitOptions popt;
  phase->add_option("-o,--out", phase_dir, "Output directory")->required();
  phase->add_option("--svg", phase_svg, "Also write an SVG rendering to this file");
  phase->add_option("--bounds", phase_bounds, "u_min,u_max,pi_min,pi_max");
  phase->add_option("--u-points", popt.u_points, "Grid points along u")->capture_default_str();
  phase->add_option("--pi-points", popt.pi_points, "Grid points along pi")
      ->capture_default_str();
  phase->add_option("--nullcline-points", popt.nullcline_points)->capture_default_str();
  phase->add_flag("--linearized", popt.linearized, "Use the linearized system");
  phase->add_option("--seed", phase_seeds, "Trajectory start u,pi (repeatable)");
  phase->add_option("--t-end", popt.t_end, "Trajectory horizon")->capture_default_str();
  phase->add_option("--dt", popt.dt, "Trajectory step")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Integrate a trajectory and write t,u,pi CSV");
  std::optional<double> sim_u0, sim_pi0;
  double sim_t_end = 40.0, sim_dt = 0.01;
  bool sim_linear = false;
  std::string sim_out;
  simulate->add_option("--u0", sim_u0, "Initial unemployment (default u* + 1e-4)");
  simulate->add_option("--pi0", sim_pi0, "Initial inflation (default pi*)");
  simulate->add_option("--t-end", sim_t_end)->capture_default_str();
  simulate->add_option("--dt", sim_dt)->capture_default_str();
  simulate->add_flag("--linearized", sim_linear, "Integrate the linearized system");
  simulate->add_option("-o,--out", sim_out, "Output CSV (default stdout)");

  auto* shock = app.add_subcommand("shock", "Comparative statics of an unexpected shock");
  std::string shock_kind;
  double shock_mag = 0.0;
  bool shock_recenter = false;
  bool shock_asym = false;
  std::string shock_format = "text";
  shock->add_option("--kind", shock_kind,
                    "demand-delta | demand-sigma | demand-rate-intercept | "
                    "supply-separation | supply-efficacy")
      ->required();
  shock->add_option("--magnitude", shock_mag, "Signed parameter change")->required();
  shock->add_flag("--recenter", shock_recenter,
                  "Supply shocks: move the intercept to the new i*");
  shock->add_flag("--asymmetry", shock_asym,
                  "Report expansionary and contractionary intercept shocks of this size");
  shock->add_option("--format", shock_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  auto* gaps = app.add_subcommand("gaps", "Inflation and tightness gaps from monthly CSVs");
  std::string gaps_index, gaps_tight, gaps_out;
  double gaps_target = 0.02;
  bool gaps_quarterly = false;
  gaps->add_option("--index", gaps_index, "Price index CSV (date,value)")->required();
  gaps->add_option("--tightness", gaps_tight, "Tightness CSV (date,value)")->required();
  gaps->add_option("--target", gaps_target, "Inflation target")->capture_default_str();
  gaps->add_flag("--quarterly", gaps_quarterly, "Emit complete-quarter means");
  gaps->add_option("-o,--out", gaps_out, "Output CSV (default stdout)");

  auto* fit = app.add_subcommand("fit", "Kinked least-squares line through a gap series");
  std::string fit_gaps;
  bool fit_free = false;
  fit->add_option("--gaps", fit_gaps, "Gap CSV (date,tightness_gap,inflation_gap)")
      ->required();
  fit->add_flag("--free-intercept", fit_free, "Estimate an intercept instead of forcing zero");

  auto* validate_cmd = app.add_subcommand("validate", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 uses its own nonzero codes; every parse failure is a usage error.
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    const ModelConfig config = resolve_config(opts);

    if (*steady) {
      cmd_steady(config, out);
    } else if (*classify_cmd) {
      cmd_classify(config, out);
    } else if (*phase) {
      popt.bounds = io::default_bounds(config);
      if (!phase_bounds.empty()) {
        const auto b = parse_numbers(phase_bounds, 4, "--bounds");
        popt.bounds = {b[0], b[1], b[2], b[3]};
      }
      for (const auto& s : phase_seeds) {
        const auto p = parse_numbers(s, 2, "--seed");
        popt.seeds.push_back({p[0], p[1]});
      }
      const auto portrait = io::build_phase_portrait(config, popt);
      io::write_portrait_csv(phase_dir, portrait);
      if (!phase_svg.empty()) io::write_portrait_svg(phase_svg, portrait);
      const auto q = io::check_quadrant_signs(config, portrait);
      const auto r = io::nullcline_residuals(config, portrait);
      out << "field_points = " << portrait.field.size() << '\n';
      out << "trajectories = " << portrait.trajectories.size() << '\n';
      print_kv(out, "euler_residual_max", r.euler);
      print_kv(out, "phillips_residual_max", r.phillips);
      out << "quadrant_signs = " << (q.ok() ? "ok" : "violated") << " ("
          << q.phillips_checked << " phillips, " << q.euler_checked << " euler)\n";
      for (const auto& v : q.violations) err << v << '\n';
    } else if (*simulate) {
      const double u_star = efficient_unemployment(config);
      const EconomyState start{sim_u0.value_or(u_star + 1e-4),
                               sim_pi0.value_or(config.prefs.pi_star)};
      Trajectory traj;
      if (sim_linear) {
        // Shift the linear field so a non-efficient intercept is honored.
        const auto lin = linearize(config);
        auto field = linear_field(lin);
        const double offset = (1.0 - lin.u_star) *
                              (policy_intercept(config) - efficient_nominal_rate(config).rate);
        field.eval = [lin, offset](EconomyState s, Branch b) {
          const double uh = s.u - lin.u_star, ph = s.pi - lin.pi_star;
          return Derivatives{lin.a11 * uh + lin.a12 * ph - offset,
                             lin.a21_for(b) * uh + lin.a22 * ph};
        };
        traj = integrate(field, start, sim_t_end, sim_dt);
      } else {
        traj = integrate(start, config, sim_t_end, sim_dt);
      }
      with_output(sim_out, out, [&](std::ostream& o) { io::write_trajectory_csv(o, traj); });
      if (traj.status == TrajectoryStatus::domain_exit) {
        err << "trajectory left the model domain at t = "
            << format_short(traj.points.back().t) << '\n';
      }
    } else if (*shock) {
      const auto kind = parse_shock_kind(shock_kind);
      if (!kind) throw Error(ErrorKind::usage, "unknown shock kind '" + shock_kind + "'");
      const bool csv = shock_format == "csv";
      if (shock_asym) {
        if (*kind != ShockKind::demand_rate_intercept) {
          throw Error(ErrorKind::usage, "--asymmetry uses demand-rate-intercept shocks");
        }
        const auto rep = kink_asymmetry_report(config, std::abs(shock_mag));
        if (csv) {
          print_result_csv_header(out);
          print_result_csv(out, "expansionary", rep.expansionary);
          print_result_csv(out, "contractionary", rep.contractionary);
        } else {
          print_result_text(out, "expansionary.", rep.expansionary);
          print_result_text(out, "contractionary.", rep.contractionary);
          print_kv(out, "pi_gap_ratio", rep.ratio);
        }
      } else {
        const auto r = apply_shock(config, {*kind, shock_mag}, shock_recenter);
        if (csv) {
          print_result_csv_header(out);
          print_result_csv(out, std::string(to_string(*kind)), r);
        } else {
          out << "shock = " << to_string(*kind) << '\n';
          print_kv(out, "magnitude", shock_mag);
          print_result_text(out, "", r);
        }
      }
    } else if (*gaps) {
      const auto index = io::read_series_csv(gaps_index);
      const auto tight = io::read_series_csv(gaps_tight);
      auto series = io::compute_gaps(index, tight, gaps_target);
      if (gaps_quarterly) series = io::quarterly_means(series);
      with_output(gaps_out, out, [&](std::ostream& o) { io::write_gaps_csv(o, series); });
    } else if (*fit) {
      print_fit(out, io::fit_kinked_line(io::read_gaps_csv(fit_gaps), !fit_free));
    } else if (*validate_cmd) {
      bool all = true;
      for (const auto& r : run_invariant_suite(config)) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        all = all && r.passed;
      }
      return all ? ok : model_error;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return model_error;
  }
  return ok;
}

}  // namespace bpc
