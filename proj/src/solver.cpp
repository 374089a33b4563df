#include "tpbvp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tpbvp/errors.hpp"
#include "tpbvp/operator.hpp"

namespace tpbvp {

void SolveConfig::validate() const {
  if (max_iters < 1) throw InputError("max_iters must be >= 1");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InputError("tol must be > 0");
  if (!(damping > 0.0 && damping <= 1.0)) throw InputError("damping must lie in (0, 1]");
  if (nodes < 9) throw InputError("nodes must be >= 9, got " + std::to_string(nodes));
  if (quad_points < 2) throw InputError("quad_points must be >= 2");
  if (!std::isfinite(initial_value)) throw InputError("initial value must be finite");
  if (initial == InitialKind::provided && !initial_state) throw InputError("initial state requested but not provided");
}

namespace {

CoupledState initial_state(const ProblemParams& p, const SolveConfig& cfg) {
  switch (cfg.initial) {
    case InitialKind::provided: {
      const auto& s = *cfg.initial_state;
      if (s.u.find_node(p.cone_lo()) < 0 || s.u.find_node(p.cone_hi()) < 0) {
        throw InputError("provided initial state must include eta/alpha and eta as nodes");
      }
      return s;
    }
    case InitialKind::constant: {
      auto nodes = problem_nodes(p, cfg.nodes);
      const std::size_t n = nodes.size();
      GridFunction g(nodes, std::vector<double>(n, cfg.initial_value), std::vector<double>(n, 0.0));
      return CoupledState(g, g);
    }
    case InitialKind::zero:
      break;
  }
  auto g = GridFunction::zero(problem_nodes(p, cfg.nodes));
  return CoupledState(g, g);
}

bool positive_on_open_interval(const GridFunction& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.nodes()[i] > 0.0 && !(g.values()[i] > 0.0)) return false;
  }
  return true;
}

bool nondecreasing(const GridFunction& g) {
  return std::all_of(g.derivs().begin(), g.derivs().end(), [](double d) { return d >= -kMonotoneSlack; });
}

}  // namespace

SolveResult solve(const ProblemParams& p, const Expr& f, const Expr& h, const SolveConfig& cfg) {
  cfg.validate();
  CoupledState state = initial_state(p, cfg);
  const QuadratureRule rule(cfg.quad_points);
  ApplyStats stats;

  SolveReport rep;
  double lambda = cfg.damping;
  double previous = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= cfg.max_iters; ++k) {
    try {
      GridFunction t1 = apply_T1(p, f, state.v, rule, &stats);
      GridFunction u_new = state.u.combine(1.0 - lambda, t1, lambda);
      GridFunction t2 = apply_T2(p, h, u_new, rule, &stats);
      GridFunction v_new = state.v.combine(1.0 - lambda, t2, lambda);

      const double step =
          std::max(c1_norm(u_new.combine(1.0, state.u, -1.0)), c1_norm(v_new.combine(1.0, state.v, -1.0)));
      state = CoupledState(std::move(u_new), std::move(v_new));
      rep.history.push_back(step);
      rep.iters = k;
      rep.final_step_norm = step;

      if (!std::isfinite(step) || step > 1e150) {
        rep.diverged = true;
        break;
      }
      if (step <= cfg.tol) {
        rep.converged = true;
        break;
      }
      if (step > previous && lambda > 0.5) lambda = 0.5;
      previous = step;
    } catch (const EvalError& e) {
      throw EvalError("sweep " + std::to_string(k) + ": " + e.what());
    }
  }
  rep.final_damping = lambda;

  if (!rep.diverged) {
    try {
      rep.fixed_point_defect_u = c1_norm(apply_T1(p, f, state.v, rule, &stats).combine(1.0, state.u, -1.0));
      rep.fixed_point_defect_v = c1_norm(apply_T2(p, h, state.u, rule, &stats).combine(1.0, state.v, -1.0));
    } catch (const EvalError& e) {
      throw EvalError(std::string("fixed-point check: ") + e.what());
    }
    const Residual res = residual(state, f, h);
    rep.residual_u = res.res_u;
    rep.residual_v = res.res_v;
    rep.residual_u_t = res.t_u;
    rep.residual_v_t = res.t_v;
  } else {
    rep.fixed_point_defect_u = rep.fixed_point_defect_v = rep.residual_u = rep.residual_v =
        std::numeric_limits<double>::infinity();
  }
  rep.bc_defect_u = bc_defect(p, state.u);
  rep.bc_defect_v = bc_defect(p, state.v);
  rep.cone_u = cone_membership(p, state.u, kConeSlack);
  rep.cone_v = cone_membership(p, state.v, kConeSlack);
  rep.cone_ok_u = rep.cone_u.member;
  rep.cone_ok_v = rep.cone_v.member;
  rep.positivity_ok = positive_on_open_interval(state.u) && positive_on_open_interval(state.v);
  rep.monotone_ok = nondecreasing(state.u) && nondecreasing(state.v);
  rep.clamped_samples = stats.clamped;
  rep.node_count = state.u.size();
  return {std::move(state), std::move(rep)};
}

double third_order_residual(const GridFunction& w, const GridFunction& other, const Expr& rhs, int grid_points,
                            int skip, double* where) {
  if (grid_points < 7 || skip < 3 || 2 * skip >= grid_points) {
    throw InputError("residual grid needs >= 7 points and skip >= 3 (stencil half-width)");
  }
  const int n = grid_points;
  const long double H = 1.0L / (n - 1);
  std::vector<long double> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const long double t = i == n - 1 ? 1.0L : static_cast<long double>(i) * H;
    vals[static_cast<std::size_t>(i)] = interpolate_value_ld(w, t);
  }
  // Fourth-order central stencil for the third derivative (half-width 3).
  constexpr long double c[] = {0.125L, -1.0L, 1.625L, 0.0L, -1.625L, 1.0L, -0.125L};
  const long double scale = 1.0L / (H * H * H);
  double worst = 0.0, at = 0.0;
  for (int i = skip; i < n - skip; ++i) {
    long double d3 = 0.0L;
    for (int k = -3; k <= 3; ++k) d3 += c[k + 3] * vals[static_cast<std::size_t>(i + k)];
    d3 *= scale;
    const double t = static_cast<double>(static_cast<long double>(i) * H);
    const double q = sample_rhs(rhs, other, t);
    const double r = static_cast<double>(std::fabs(d3 + static_cast<long double>(q)));
    if (r > worst) {
      worst = r;
      at = t;
    }
  }
  if (where != nullptr) *where = at;
  return worst;
}

Residual residual(const CoupledState& state, const Expr& f, const Expr& h, int grid_points, int skip) {
  Residual r;
  r.res_u = third_order_residual(state.u, state.v, f, grid_points, skip, &r.t_u);
  r.res_v = third_order_residual(state.v, state.u, h, grid_points, skip, &r.t_v);
  return r;
}

double bc_defect(const ProblemParams& p, const GridFunction& g) {
  const Point1 at0 = interpolate(g, 0.0);
  const Point1 at1 = interpolate(g, 1.0);
  const Point1 at_eta = interpolate(g, p.eta());
  return std::max({std::fabs(at0.value), std::fabs(at0.deriv), std::fabs(at1.deriv - p.alpha() * at_eta.deriv)});
}

}  // namespace tpbvp
