#include "tpbvp/reference.hpp"

namespace tpbvp::reference {

GridFunction apply_operator(const ProblemParams& p, const Expr& rhs, const GridFunction& input,
                            const QuadratureRule& rule, ApplyStats* stats) {
  const auto nodes = input.nodes();
  const QuadratureRule split = rule.with_breakpoints(nodes);
  std::size_t samples = 0, clamped = 0;
  auto w = [&](double s) {
    bool c = false;
    const double y = sample_rhs(rhs, input, s, &c);
    ++samples;
    if (c) ++clamped;
    return y;
  };
  std::vector<double> values, derivs;
  values.reserve(nodes.size());
  derivs.reserve(nodes.size());
  for (double t : nodes) {
    values.push_back(integrate_kernel(p, KernelKind::green, t, w, split));
    derivs.push_back(integrate_kernel(p, KernelKind::green_dt, t, w, split));
  }
  if (stats != nullptr) {
    stats->samples += samples;
    stats->clamped += clamped;
  }
  return GridFunction(std::vector<double>(nodes.begin(), nodes.end()), std::move(values), std::move(derivs));
}

}  // namespace tpbvp::reference
