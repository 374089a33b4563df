#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tpbvp/expr.hpp"
#include "tpbvp/grid_function.hpp"
#include "tpbvp/kernel.hpp"

namespace tpbvp {

// ---------------------------------------------------------------------------
// Kernel inequalities

/// Kernel evaluators used by certify_kernel. Replaceable so the harness itself
/// can be tested against a deliberately broken kernel.
struct KernelSet {
  double (*green)(const ProblemParams&, double, double) = &green_unchecked;
  double (*green_dt)(const ProblemParams&, double, double) = &green_dt_unchecked;
};

/// Outcome of one inequality swept over a grid. `worst_violation` is the
/// largest signed amount by which the inequality fails (negative means every
/// point holds with margin); the check passes iff worst_violation <= slack.
struct CheckResult {
  std::string name;
  std::string statement;
  bool passed = false;
  double worst_violation = 0.0;
  double worst_t = 0.0;
  double worst_s = 0.0;
  double slack = 0.0;
  /// Extremal ratio kernel / bound over grid points with bound > 0: the largest
  /// ratio for upper-bound checks, the smallest for lower-bound checks. This is
  /// the sharpest constant the grid supports.
  double empirical_ratio = 0.0;
  double ratio_t = 0.0;
  double ratio_s = 0.0;
  std::size_t points = 0;
};

struct CertificationReport {
  double alpha = 0.0;
  double eta = 0.0;
  double k0 = 0.0;
  double k1 = 0.0;
  int grid_n = 0;
  double slack = 0.0;
  std::vector<CheckResult> checks;

  bool all_passed() const noexcept;
  const CheckResult* find(std::string_view name) const noexcept;
};

inline constexpr double kBoundSlack = 1e-12;
inline constexpr int kMinCertifyGrid = 11;

/// Sweeps, on uniform grid_n x grid_n grids,
///   green_upper     0 <= G(t,s) <= g0(s)            on [0,1]^2
///   green_lower     G(t,s) >= k0 g0(s)              on [eta/alpha, eta] x [0,1]
///   green_dt_upper  0 <= dG/dt(t,s) <= g1(s)        on [0,1]^2
///   green_dt_lower  dG/dt(t,s) >= k1 g1(s)          on [eta/alpha, eta] x [0,1]
/// Rows are processed in parallel; the report is identical to the serial sweep.
/// Throws InputError if grid_n < 11.
CertificationReport certify_kernel(const ProblemParams& p, int grid_n, const KernelSet& kernels = {});

namespace detail {
// Shared by the parallel and reference sweeps.
struct SweepSpec {
  const char* name;
  const char* statement;
  bool upper;           // upper-bound check (kernel <= bound) vs lower (kernel >= c * bound)
  bool derivative;      // dG/dt instead of G
  double t_lo, t_hi;
  double constant;      // multiplies the bound in lower checks
};
std::vector<SweepSpec> sweep_specs(const ProblemParams& p);
double grid_point(double lo, double hi, int i, int n) noexcept;
}  // namespace detail

// ---------------------------------------------------------------------------
// Cone membership

struct ConeReport {
  bool member = false;
  bool nonnegative = false;
  double min_value = 0.0;          // min over all nodes
  double min_value_t = 0.0;
  bool value_ok = false;           // min_{[eta/alpha,eta]} w >= k0 ||w|| - slack
  double cone_min_value = 0.0;
  double value_bound = 0.0;        // k0 ||w||
  bool deriv_ok = false;           // min_{[eta/alpha,eta]} w' >= k1 ||w'|| - slack
  double cone_min_deriv = 0.0;
  double cone_min_deriv_t = 0.0;
  double deriv_bound = 0.0;        // k1 ||w'||
  double slack = 0.0;
};

/// Checks the three cone conditions on the nodes of `g`. The node set must
/// contain eta/alpha and eta (InputError otherwise).
ConeReport cone_membership(const ProblemParams& p, const GridFunction& g, double slack);

// ---------------------------------------------------------------------------
// Growth diagnostics

/// A direction (phi(t), psi(t)) along which f(t, c phi, c psi) is probed.
struct Direction {
  std::string label;
  std::function<double(double)> phi;
  std::function<double(double)> psi;
};

/// (1,1), (1,0), (0,1), (t,1).
std::vector<Direction> default_directions();

/// Parses "phi,psi" where each side is an expression in t, e.g. "t,1".
Direction parse_direction(std::string_view text);

struct ScaleRange {
  double lo = 1e-6;
  double hi = 1e6;
  int count = 13;
};

/// Geometric sequence lo..hi with `count` entries (both ends included).
std::vector<double> geometric_scales(const ScaleRange& range);

struct GrowthCurve {
  std::string label;
  std::vector<double> ratios;
};

/// ratio(c) = max_{t, direction} e(t, c phi, c psi) / (c (|phi| + |psi|)).
/// Purely diagnostic: sampled values, not limits.
struct GrowthScan {
  std::vector<double> scales;
  std::vector<double> ratios;
  std::vector<GrowthCurve> per_direction;
};

/// Samples t on a uniform grid of `t_samples` points; points where
/// |phi| + |psi| = 0 are skipped. Evaluation errors are rethrown with (c, t).
GrowthScan growth_scan(const Expr& e, std::span<const Direction> directions, const ScaleRange& scales,
                       int t_samples = 101);

}  // namespace tpbvp
