#include "tpbvp/operator.hpp"

#include <algorithm>
#include <vector>

#include "parallel.hpp"

namespace tpbvp {

double sample_rhs(const Expr& rhs, const GridFunction& input, double s, bool* clamped) {
  const Point1 w = interpolate(input, s);
  const bool neg = w.value < 0.0 || w.deriv < 0.0;
  if (clamped != nullptr) *clamped = neg;
  return rhs.eval(s, std::max(w.value, 0.0), std::max(w.deriv, 0.0));
}

GridFunction apply_operator(const ProblemParams& p, const Expr& rhs, const GridFunction& input,
                            const QuadratureRule& rule, ApplyStats* stats) {
  const auto nodes = input.nodes();
  const double eta[] = {p.eta()};
  // Every output node is a breakpoint, so the per-node split at t adds nothing
  // and one sample set serves all nodes.
  const PanelSamples smp = rule.with_breakpoints(nodes).samples(eta);
  const auto nq = static_cast<std::ptrdiff_t>(smp.points.size());

  std::vector<double> weighted(smp.points.size());
  std::vector<unsigned char> clamped(smp.points.size(), 0);
  detail::parallel_for(nq, [&](std::ptrdiff_t q) {
    const auto k = static_cast<std::size_t>(q);
    bool c = false;
    weighted[k] = smp.weights[k] * sample_rhs(rhs, input, smp.points[k], &c);
    clamped[k] = c ? 1 : 0;
  });

  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  std::vector<double> values(nodes.size()), derivs(nodes.size());
  detail::parallel_for(n, [&](std::ptrdiff_t i) {
    const double t = nodes[static_cast<std::size_t>(i)];
    double sv = 0.0, sd = 0.0;
    for (std::size_t q = 0; q < weighted.size(); ++q) {
      const double s = smp.points[q];
      const Branch b = select_branch(p, t, s);
      sv += green_branch(p, b, t, s) * weighted[q];
      sd += green_dt_branch(p, b, t, s) * weighted[q];
    }
    values[static_cast<std::size_t>(i)] = sv;
    derivs[static_cast<std::size_t>(i)] = sd;
  });

  if (stats != nullptr) {
    stats->samples += weighted.size();
    stats->clamped += static_cast<std::size_t>(std::count(clamped.begin(), clamped.end(), 1));
  }
  return GridFunction(std::vector<double>(nodes.begin(), nodes.end()), std::move(values), std::move(derivs));
}

}  // namespace tpbvp
