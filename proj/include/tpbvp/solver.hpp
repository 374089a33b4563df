#pragma once

#include <optional>
#include <vector>

#include "tpbvp/expr.hpp"
#include "tpbvp/grid_function.hpp"
#include "tpbvp/kernel.hpp"
#include "tpbvp/verify.hpp"

namespace tpbvp {

enum class InitialKind { zero, constant, provided };

struct SolveConfig {
  int max_iters = 200;
  double tol = 1e-10;           ///< C^1-norm step size at which iteration stops
  double damping = 1.0;         ///< in (0, 1]
  int nodes = 65;               ///< Chebyshev points before adding eta/alpha and eta
  int quad_points = 8;          ///< Gauss points per panel
  InitialKind initial = InitialKind::zero;
  double initial_value = 0.0;   ///< used by InitialKind::constant
  std::optional<CoupledState> initial_state;  ///< used by InitialKind::provided

  /// Throws InputError describing the first violated constraint.
  void validate() const;
};

inline constexpr double kConeSlack = 1e-9;
inline constexpr double kMonotoneSlack = 1e-10;

struct SolveReport {
  bool converged = false;
  bool diverged = false;
  int iters = 0;
  double final_step_norm = 0.0;
  double final_damping = 1.0;
  std::vector<double> history;  ///< C^1 step norm per sweep

  double residual_u = 0.0;
  double residual_v = 0.0;
  double residual_u_t = 0.0;    ///< where the residual maximum occurs
  double residual_v_t = 0.0;
  double bc_defect_u = 0.0;
  double bc_defect_v = 0.0;
  double fixed_point_defect_u = 0.0;  ///< ||T1[v] - u||_{C^1} at the final state
  double fixed_point_defect_v = 0.0;  ///< ||T2[u] - v||_{C^1} at the final state

  bool positivity_ok = false;   ///< u, v > 0 at every node t > 0
  bool monotone_ok = false;     ///< u', v' >= -1e-10 at every node
  bool cone_ok_u = false;
  bool cone_ok_v = false;
  ConeReport cone_u;
  ConeReport cone_v;
  std::size_t clamped_samples = 0;
  std::size_t node_count = 0;
};

struct SolveResult {
  CoupledState state;
  SolveReport report;
};

/// Damped Gauss-Seidel Picard iteration on (T1, T2):
///   u <- (1-l) u + l T1[v],  then  v <- (1-l) v + l T2[u].
/// Stops when the larger C^1 step is <= tol or after max_iters sweeps. The
/// damping drops to 0.5 the first time a step grows. Non-convergence is
/// reported, not thrown; evaluation errors are rethrown with the sweep index.
SolveResult solve(const ProblemParams& p, const Expr& f, const Expr& h, const SolveConfig& cfg);

struct Residual {
  double res_u = 0.0;
  double res_v = 0.0;
  double t_u = 0.0;
  double t_v = 0.0;
};

/// max |u''' + f(t, v, v')| and max |v''' + h(t, u, u')| over a uniform grid of
/// `grid_points` points on [0,1], skipping `skip` points at each end. u''' is the
/// fourth-order central difference of the Hermite interpolant, in long double.
Residual residual(const CoupledState& state, const Expr& f, const Expr& h, int grid_points = 1001, int skip = 3);

/// max |w''' + rhs(t, other, other')| on the same grid.
double third_order_residual(const GridFunction& w, const GridFunction& other, const Expr& rhs, int grid_points = 1001,
                            int skip = 3, double* where = nullptr);

/// max(|g(0)|, |g'(0)|, |g'(1) - alpha g'(eta)|).
double bc_defect(const ProblemParams& p, const GridFunction& g);

}  // namespace tpbvp
