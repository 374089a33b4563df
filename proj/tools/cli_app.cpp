#include "cli_app.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include "tpbvp/errors.hpp"
#include "tpbvp/expr.hpp"
#include "tpbvp/io.hpp"
#include "tpbvp/kernel.hpp"
#include "tpbvp/solver.hpp"
#include "tpbvp/verify.hpp"

namespace tpbvp::cli {

namespace {

using io::format_real;

struct Overrides {
  std::string config;
  std::optional<double> alpha, eta, tol, damping;
  std::optional<std::string> f, h, initial, out_csv, out_json;
  std::optional<int> nodes, quad_points, max_iter;
};

void add_problem_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config, "JSON problem configuration");
  cmd.add_option("--alpha", o.alpha, "alpha in u'(1) = alpha u'(eta)");
  cmd.add_option("--eta", o.eta, "interior point eta in (0,1)");
  cmd.add_option("--f", o.f, "f(t, y, yp) driving u (y = v, yp = v')");
  cmd.add_option("--h", o.h, "h(t, y, yp) driving v (y = u, yp = u')");
}

void add_solver_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--nodes", o.nodes, "Chebyshev nodes (>= 9)");
  cmd.add_option("--quad-points", o.quad_points, "Gauss points per panel");
  cmd.add_option("--tol", o.tol, "C1 step tolerance");
  cmd.add_option("--max-iter", o.max_iter, "maximum sweeps");
  cmd.add_option("--damping", o.damping, "damping in (0,1]");
  cmd.add_option("--initial", o.initial, "initial state: zero | const:<c>");
  cmd.add_option("--out-csv", o.out_csv, "node CSV output path (t,u,du,v,dv)");
  cmd.add_option("--out-json", o.out_json, "JSON report output path");
}

io::ProblemConfig effective_config(const Overrides& o) {
  io::ProblemConfig c = o.config.empty() ? io::ProblemConfig{} : io::load_config(o.config);
  if (o.alpha) c.alpha = *o.alpha;
  if (o.eta) c.eta = *o.eta;
  if (o.f) c.f = *o.f;
  if (o.h) c.h = *o.h;
  if (o.nodes) c.solver.nodes = *o.nodes;
  if (o.quad_points) c.solver.quad_points = *o.quad_points;
  if (o.tol) c.solver.tol = *o.tol;
  if (o.max_iter) c.solver.max_iters = *o.max_iter;
  if (o.damping) c.solver.damping = *o.damping;
  if (o.initial) {
    if (*o.initial == "zero") {
      c.solver.initial = InitialKind::zero;
    } else if (o.initial->rfind("const:", 0) == 0) {
      c.solver.initial = InitialKind::constant;
      try {
        c.solver.initial_value = std::stod(o.initial->substr(6));
      } catch (const std::exception&) {
        throw InputError("--initial const:<c> needs a number");
      }
    } else {
      throw InputError("--initial must be 'zero' or 'const:<c>'");
    }
  }
  if (o.out_csv) c.out_csv = *o.out_csv;
  if (o.out_json) c.out_json = *o.out_json;
  return c;
}

Expr parse_named(const std::string& name, const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), e.offset(), name + ": " + e.detail() + " in \"" + text + "\"");
  }
}

int cmd_solve(const Overrides& o, bool dump_config, std::ostream& out, std::ostream& err) {
  const io::ProblemConfig c = effective_config(o);
  if (dump_config) {
    out << io::config_to_json(c).dump(2) << '\n';
    return kSuccess;
  }
  const ProblemParams p(c.alpha, c.eta);
  const Expr f = parse_named("f", c.f);
  const Expr h = parse_named("h", c.h);
  c.solver.validate();

  const SolveResult res = solve(p, f, h, c.solver);
  const SolveReport& r = res.report;
  if (r.clamped_samples > 0) {
    err << "warning: " << r.clamped_samples << " right-hand-side samples had negative y or yp and were clamped to 0\n";
  }

  out << (r.converged ? "converged" : (r.diverged ? "diverged" : "not converged")) << " after " << r.iters
      << " sweeps, step " << format_real(r.final_step_norm) << '\n';
  out << "residual_u " << format_real(r.residual_u) << "  residual_v " << format_real(r.residual_v) << '\n';
  out << "bc_defect_u " << format_real(r.bc_defect_u) << "  bc_defect_v " << format_real(r.bc_defect_v) << '\n';
  out << "positive " << (r.positivity_ok ? "yes" : "no") << "  nondecreasing " << (r.monotone_ok ? "yes" : "no")
      << "  cone u " << (r.cone_ok_u ? "yes" : "no") << "  cone v " << (r.cone_ok_v ? "yes" : "no") << '\n';

  if (!c.out_csv.empty()) {
    std::ostringstream csv;
    io::write_csv(csv, res.state);
    if (c.out_csv == "-") {
      out << csv.str();
    } else {
      io::write_file(c.out_csv, csv.str());
    }
  }
  if (!c.out_json.empty()) io::write_file(c.out_json, io::to_json(r).dump(2) + "\n");
  return r.converged ? kSuccess : kNotAchieved;
}

int cmd_verify_green(double alpha, double eta, int grid, const std::string& out_json, std::ostream& out) {
  const ProblemParams p(alpha, eta);
  const CertificationReport rep = certify_kernel(p, grid);
  out << "alpha " << format_real(alpha) << "  eta " << format_real(eta) << "  k0 " << format_real(rep.k0) << "  k1 "
      << format_real(rep.k1) << "  grid " << grid << "x" << grid << '\n';
  for (const auto& c : rep.checks) {
    char line[512];
    std::snprintf(line, sizeof line, "%s %-15s %-48s worst %+.3e at (t=%.6f, s=%.6f)  ratio %.6g\n",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.statement.c_str(), c.worst_violation, c.worst_t,
                  c.worst_s, c.empirical_ratio);
    out << line;
  }
  if (!out_json.empty()) io::write_file(out_json, io::to_json(rep).dump(2) + "\n");
  return rep.all_passed() ? kSuccess : kNotAchieved;
}

int cmd_scan(const Overrides& o, const std::vector<std::string>& dirs, const ScaleRange& range, int t_samples,
             std::ostream& out) {
  const io::ProblemConfig c = effective_config(o);
  const Expr f = parse_named("f", c.f);
  const Expr h = parse_named("h", c.h);
  std::vector<Direction> directions;
  for (const auto& d : dirs) directions.push_back(parse_direction(d));
  if (directions.empty()) directions = default_directions();

  const GrowthScan fs = growth_scan(f, directions, range, t_samples);
  const GrowthScan hs = growth_scan(h, directions, range, t_samples);
  out << "# ratio(c) = max over t and directions of e(t, c*phi, c*psi) / (c*(|phi|+|psi|))\n";
  std::ostringstream csv;
  io::write_scan_csv(csv, fs, hs);
  out << csv.str();
  if (c.out_csv.size()) io::write_file(c.out_csv, csv.str());
  if (c.out_json.size()) {
    nlohmann::json j{{"f", io::to_json(fs)}, {"h", io::to_json(hs)}};
    io::write_file(c.out_json, j.dump(2) + "\n");
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coupled third-order three-point BVP solver and kernel certifier", "tpbvp"};
  app.require_subcommand(1);
  // --h names the second right-hand side, so help is long-form only.
  app.set_help_flag("--help", "print this help and exit");

  Overrides solve_opts;
  bool dump_config = false;
  auto* solve_cmd = app.add_subcommand("solve", "solve the coupled system by damped Picard iteration");
  add_problem_options(*solve_cmd, solve_opts);
  add_solver_options(*solve_cmd, solve_opts);
  solve_cmd->add_flag("--dump-config", dump_config, "print the effective configuration as JSON and exit");

  double v_alpha = 1.5, v_eta = 0.5;
  int v_grid = 401;
  std::string v_json;
  auto* verify_cmd = app.add_subcommand("verify-green", "check the kernel bound inequalities on a grid");
  verify_cmd->add_option("--alpha", v_alpha, "alpha")->capture_default_str();
  verify_cmd->add_option("--eta", v_eta, "eta")->capture_default_str();
  verify_cmd->add_option("--grid", v_grid, "grid points per axis (>= 11)")->capture_default_str();
  verify_cmd->add_option("--out-json", v_json, "JSON report output path");

  Overrides scan_opts;
  std::vector<std::string> scan_dirs;
  ScaleRange range;
  int t_samples = 101;
  auto* scan_cmd = app.add_subcommand("scan", "growth-ratio diagnostics for f and h");
  add_problem_options(*scan_cmd, scan_opts);
  scan_cmd->add_option("--direction", scan_dirs, "direction phi,psi as expressions in t (repeatable)");
  scan_cmd->add_option("--scale-min", range.lo, "smallest scale")->capture_default_str();
  scan_cmd->add_option("--scale-max", range.hi, "largest scale")->capture_default_str();
  scan_cmd->add_option("--scale-count", range.count, "number of scales")->capture_default_str();
  scan_cmd->add_option("--t-samples", t_samples, "t samples")->capture_default_str();
  scan_cmd->add_option("--out-csv", scan_opts.out_csv, "CSV output path");
  scan_cmd->add_option("--out-json", scan_opts.out_json, "JSON output path");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_opts, dump_config, out, err);
    if (*verify_cmd) return cmd_verify_green(v_alpha, v_eta, v_grid, v_json, out);
    if (*scan_cmd) return cmd_scan(scan_opts, scan_dirs, range, t_samples, out);
  } catch (const ParseError& e) {
    err << "error: expression " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace tpbvp::cli
