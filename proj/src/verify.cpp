#include "tpbvp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "tpbvp/errors.hpp"

namespace tpbvp {

bool CertificationReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* CertificationReport::find(std::string_view name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace detail {

double grid_point(double lo, double hi, int i, int n) noexcept {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / (n - 1);
}

std::vector<SweepSpec> sweep_specs(const ProblemParams& p) {
  return {
      {"green_upper", "0 <= G(t,s) <= g0(s) on [0,1]x[0,1]", true, false, 0.0, 1.0, 1.0},
      {"green_lower", "G(t,s) >= k0*g0(s) on [eta/alpha,eta]x[0,1]", false, false, p.cone_lo(), p.cone_hi(),
       p.k0()},
      {"green_dt_upper", "0 <= dG/dt(t,s) <= g1(s) on [0,1]x[0,1]", true, true, 0.0, 1.0, 1.0},
      {"green_dt_lower", "dG/dt(t,s) >= k1*g1(s) on [eta/alpha,eta]x[0,1]", false, true, p.cone_lo(),
       p.cone_hi(), p.k1()},
  };
}

}  // namespace detail

namespace {

struct RowResult {
  double worst = -std::numeric_limits<double>::infinity();
  double worst_s = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();
  double ratio_s = 0.0;
};

}  // namespace

CertificationReport certify_kernel(const ProblemParams& p, int grid_n, const KernelSet& kernels) {
  if (grid_n < kMinCertifyGrid) {
    throw InputError("grid too coarse: grid_n = " + std::to_string(grid_n) + " (need >= " +
                     std::to_string(kMinCertifyGrid) + ")");
  }
  CertificationReport rep;
  rep.alpha = p.alpha();
  rep.eta = p.eta();
  rep.k0 = p.k0();
  rep.k1 = p.k1();
  rep.grid_n = grid_n;
  rep.slack = kBoundSlack;

  // Bound values depend only on s; tabulate once.
  std::vector<double> svals(static_cast<std::size_t>(grid_n)), g0(svals.size()), g1(svals.size());
  for (int j = 0; j < grid_n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    svals[k] = detail::grid_point(0.0, 1.0, j, grid_n);
    g0[k] = g0_bound(p, svals[k]);
    g1[k] = g1_bound(p, svals[k]);
  }

  for (const auto& spec : detail::sweep_specs(p)) {
    const auto& bound = spec.derivative ? g1 : g0;
    const auto kernel = spec.derivative ? kernels.green_dt : kernels.green;
    std::vector<RowResult> rows(static_cast<std::size_t>(grid_n));

    detail::parallel_for(grid_n, [&](std::ptrdiff_t i) {
      const double t = detail::grid_point(spec.t_lo, spec.t_hi, static_cast<int>(i), grid_n);
      RowResult r;
      for (std::size_t j = 0; j < svals.size(); ++j) {
        const double k = kernel(p, t, svals[j]);
        const double b = bound[j];
        const double viol = spec.upper ? std::max(-k, k - b) : spec.constant * b - k;
        if (viol > r.worst) {
          r.worst = viol;
          r.worst_s = svals[j];
        }
        if (b > 0.0) {
          const double ratio = k / b;
          const bool better = std::isnan(r.ratio) || (spec.upper ? ratio > r.ratio : ratio < r.ratio);
          if (better) {
            r.ratio = ratio;
            r.ratio_s = svals[j];
          }
        }
      }
      rows[static_cast<std::size_t>(i)] = r;
    });

    CheckResult c;
    c.name = spec.name;
    c.statement = spec.statement;
    c.slack = kBoundSlack;
    c.worst_violation = -std::numeric_limits<double>::infinity();
    c.empirical_ratio = std::numeric_limits<double>::quiet_NaN();
    c.points = static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n);
    for (int i = 0; i < grid_n; ++i) {
      const RowResult& r = rows[static_cast<std::size_t>(i)];
      const double t = detail::grid_point(spec.t_lo, spec.t_hi, i, grid_n);
      if (r.worst > c.worst_violation) {
        c.worst_violation = r.worst;
        c.worst_t = t;
        c.worst_s = r.worst_s;
      }
      if (!std::isnan(r.ratio)) {
        const bool better =
            std::isnan(c.empirical_ratio) || (spec.upper ? r.ratio > c.empirical_ratio : r.ratio < c.empirical_ratio);
        if (better) {
          c.empirical_ratio = r.ratio;
          c.ratio_t = t;
          c.ratio_s = r.ratio_s;
        }
      }
    }
    c.passed = c.worst_violation <= c.slack;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

ConeReport cone_membership(const ProblemParams& p, const GridFunction& g, double slack) {
  const double lo = p.cone_lo();
  const double hi = p.cone_hi();
  if (g.find_node(lo) < 0 || g.find_node(hi) < 0) {
    throw InputError("cone check needs eta/alpha and eta among the grid nodes");
  }
  const auto nodes = g.nodes();
  const auto vals = g.values();
  const auto ders = g.derivs();

  ConeReport r;
  r.slack = slack;
  r.min_value = std::numeric_limits<double>::infinity();
  r.cone_min_value = std::numeric_limits<double>::infinity();
  r.cone_min_deriv = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (vals[i] < r.min_value) {
      r.min_value = vals[i];
      r.min_value_t = nodes[i];
    }
    if (nodes[i] >= lo && nodes[i] <= hi) {
      r.cone_min_value = std::min(r.cone_min_value, vals[i]);
      if (ders[i] < r.cone_min_deriv) {
        r.cone_min_deriv = ders[i];
        r.cone_min_deriv_t = nodes[i];
      }
    }
  }
  r.value_bound = p.k0() * sup_norm(g);
  r.deriv_bound = p.k1() * sup_norm_deriv(g);
  r.nonnegative = r.min_value >= -slack;
  r.value_ok = r.cone_min_value >= r.value_bound - slack;
  r.deriv_ok = r.cone_min_deriv >= r.deriv_bound - slack;
  r.member = r.nonnegative && r.value_ok && r.deriv_ok;
  return r;
}

std::vector<Direction> default_directions() {
  return {
      {"(1,1)", [](double) { return 1.0; }, [](double) { return 1.0; }},
      {"(1,0)", [](double) { return 1.0; }, [](double) { return 0.0; }},
      {"(0,1)", [](double) { return 0.0; }, [](double) { return 1.0; }},
      {"(t,1)", [](double t) { return t; }, [](double) { return 1.0; }},
  };
}

Direction parse_direction(std::string_view text) {
  // Split at the top-level comma (commas inside min/max calls are nested).
  int depth = 0;
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      if (split != std::string_view::npos) throw InputError("direction must have exactly two components: phi,psi");
      split = i;
    }
  }
  if (split == std::string_view::npos) throw InputError("direction must be written as phi,psi");
  Expr phi = parse(text.substr(0, split));
  Expr psi = [&] {
    try {
      return parse(text.substr(split + 1));
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.offset() + split + 1, e.detail());
    }
  }();
  return {"(" + std::string(text) + ")", [phi](double t) { return phi.eval(t, 0.0, 0.0); },
          [psi](double t) { return psi.eval(t, 0.0, 0.0); }};
}

std::vector<double> geometric_scales(const ScaleRange& range) {
  if (!(range.lo > 0.0) || !(range.hi >= range.lo) || !std::isfinite(range.hi) || range.count < 1) {
    throw InputError("scale range needs 0 < lo <= hi and count >= 1");
  }
  if (range.count > 1 && !(range.hi > range.lo)) throw InputError("scales must be strictly increasing");
  std::vector<double> out(static_cast<std::size_t>(range.count));
  const double llo = std::log(range.lo), lhi = std::log(range.hi);
  for (int i = 0; i < range.count; ++i) {
    out[static_cast<std::size_t>(i)] =
        range.count == 1 ? range.lo : std::exp(llo + (lhi - llo) * static_cast<double>(i) / (range.count - 1));
  }
  out.front() = range.lo;
  out.back() = range.count == 1 ? range.lo : range.hi;
  return out;
}

GrowthScan growth_scan(const Expr& e, std::span<const Direction> directions, const ScaleRange& scales,
                       int t_samples) {
  if (directions.empty()) throw InputError("growth scan needs at least one direction");
  if (t_samples < 2) throw InputError("growth scan needs at least two t samples");

  GrowthScan out;
  out.scales = geometric_scales(scales);
  const double none = -std::numeric_limits<double>::infinity();
  out.ratios.assign(out.scales.size(), none);

  for (const Direction& d : directions) {
    GrowthCurve curve{d.label, std::vector<double>(out.scales.size(), none)};
    bool any = false;
    for (int i = 0; i < t_samples; ++i) {
      const double t = detail::grid_point(0.0, 1.0, i, t_samples);
      const double phi = d.phi(t);
      const double psi = d.psi(t);
      if (phi < 0.0 || psi < 0.0) throw InputError("direction " + d.label + " is negative at t = " + std::to_string(t));
      const double mag = std::fabs(phi) + std::fabs(psi);
      if (mag == 0.0) continue;
      any = true;
      for (std::size_t k = 0; k < out.scales.size(); ++k) {
        const double c = out.scales[k];
        double val = 0.0;
        try {
          val = e.eval(t, c * phi, c * psi);
        } catch (const EvalError& err) {
          throw EvalError(std::string(err.what()) + " at (c=" + std::to_string(c) + ", t=" + std::to_string(t) +
                          ", direction " + d.label + ")");
        }
        curve.ratios[k] = std::max(curve.ratios[k], val / (c * mag));
      }
    }
    if (!any) throw InputError("direction " + d.label + " is identically zero");
    for (std::size_t k = 0; k < out.scales.size(); ++k) out.ratios[k] = std::max(out.ratios[k], curve.ratios[k]);
    out.per_direction.push_back(std::move(curve));
  }
  return out;
}

}  // namespace tpbvp
