#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tpbvp/errors.hpp"
#include "tpbvp/reference.hpp"

namespace tpbvp::reference {

CertificationReport certify_kernel(const ProblemParams& p, int grid_n, const KernelSet& kernels) {
  if (grid_n < kMinCertifyGrid) throw InputError("grid too coarse: grid_n = " + std::to_string(grid_n));
  CertificationReport rep;
  rep.alpha = p.alpha();
  rep.eta = p.eta();
  rep.k0 = p.k0();
  rep.k1 = p.k1();
  rep.grid_n = grid_n;
  rep.slack = kBoundSlack;

  for (const auto& spec : detail::sweep_specs(p)) {
    CheckResult c;
    c.name = spec.name;
    c.statement = spec.statement;
    c.slack = kBoundSlack;
    c.worst_violation = -std::numeric_limits<double>::infinity();
    c.empirical_ratio = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < grid_n; ++i) {
      const double t = detail::grid_point(spec.t_lo, spec.t_hi, i, grid_n);
      for (int j = 0; j < grid_n; ++j) {
        const double s = detail::grid_point(0.0, 1.0, j, grid_n);
        const double k = spec.derivative ? kernels.green_dt(p, t, s) : kernels.green(p, t, s);
        const double b = spec.derivative ? g1_bound(p, s) : g0_bound(p, s);
        const double viol = spec.upper ? std::max(-k, k - b) : spec.constant * b - k;
        ++c.points;
        if (viol > c.worst_violation) {
          c.worst_violation = viol;
          c.worst_t = t;
          c.worst_s = s;
        }
        if (b > 0.0) {
          const double ratio = k / b;
          if (std::isnan(c.empirical_ratio) || (spec.upper ? ratio > c.empirical_ratio : ratio < c.empirical_ratio)) {
            c.empirical_ratio = ratio;
            c.ratio_t = t;
            c.ratio_s = s;
          }
        }
      }
    }
    c.passed = c.worst_violation <= c.slack;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace tpbvp::reference
