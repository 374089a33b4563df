#pragma once

// Straightforward serial implementations of the parallel kernels. They share
// no code with the optimized paths beyond the kernel formulas and exist so
// tests and benchmarks can compare against them.

#include "tpbvp/operator.hpp"
#include "tpbvp/verify.hpp"

namespace tpbvp::reference {

/// One integrate_kernel call per node and kernel, re-evaluating the
/// right-hand side for each call.
GridFunction apply_operator(const ProblemParams& p, const Expr& rhs, const GridFunction& input,
                            const QuadratureRule& rule, ApplyStats* stats = nullptr);

/// Plain nested loops over the certification grids.
CertificationReport certify_kernel(const ProblemParams& p, int grid_n, const KernelSet& kernels = {});

}  // namespace tpbvp::reference
