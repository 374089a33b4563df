#pragma once

// The coupled integral operator T = (T1, T2):
//   T1[v](t) = \int_0^1 G(t,s) f(s, v(s), v'(s)) ds
//   T2[u](t) = \int_0^1 G(t,s) h(s, u(s), u'(s)) ds
// Outputs carry both the value and the t-derivative (via dG/dt) at each node.

#include <cstddef>

#include "tpbvp/expr.hpp"
#include "tpbvp/grid_function.hpp"
#include "tpbvp/kernel.hpp"
#include "tpbvp/quadrature.hpp"

namespace tpbvp {

struct ApplyStats {
  std::size_t samples = 0;  ///< right-hand side evaluations
  std::size_t clamped = 0;  ///< samples where y or yp was negative and clamped to 0
};

/// Integrates `rhs(s, w(s), w'(s))` against G and dG/dt at every node of `input`.
/// Panels are split at all input nodes and at eta, so the interpolated integrand
/// is smooth on each panel. Negative interpolated y, yp are clamped to 0.
/// Node integrals are computed in parallel (OpenMP).
GridFunction apply_operator(const ProblemParams& p, const Expr& rhs, const GridFunction& input,
                            const QuadratureRule& rule, ApplyStats* stats = nullptr);

inline GridFunction apply_T1(const ProblemParams& p, const Expr& f, const GridFunction& v,
                             const QuadratureRule& rule, ApplyStats* stats = nullptr) {
  return apply_operator(p, f, v, rule, stats);
}

inline GridFunction apply_T2(const ProblemParams& p, const Expr& h, const GridFunction& u,
                             const QuadratureRule& rule, ApplyStats* stats = nullptr) {
  return apply_operator(p, h, u, rule, stats);
}

/// Right-hand side sampled at interpolated input data, with the clamp applied.
double sample_rhs(const Expr& rhs, const GridFunction& input, double s, bool* clamped = nullptr);

}  // namespace tpbvp
