#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "tpbvp/kernel.hpp"

namespace tpbvp {

/// Gauss-Legendre nodes and weights mapped to [0, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [0, 1]; exact for polynomials of degree 2n-1.
GaussLegendre gauss_legendre(int n);

/// Flattened quadrature samples over a set of panels.
struct PanelSamples {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Composite Gauss-Legendre rule. Panel breakpoints always contain 0 and 1;
/// each call to integrate_kernel adds {t, eta} on top of them.
class QuadratureRule {
 public:
  explicit QuadratureRule(int points_per_panel = 8, std::vector<double> breakpoints = {},
                          int subdivisions = 1);

  int points_per_panel() const noexcept { return points_; }
  int subdivisions() const noexcept { return subdivisions_; }
  /// Sorted, unique, contains 0 and 1.
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }
  /// Polynomial degree integrated exactly on each panel.
  int degree() const noexcept { return 2 * points_ - 1; }

  /// Same rule with more breakpoints.
  QuadratureRule with_breakpoints(std::span<const double> extra) const;
  /// Same rule with each panel split into `factor` times as many equal pieces.
  QuadratureRule refined(int factor = 2) const;

  /// Samples over breakpoints() merged with `extra` (clipped to [0,1]).
  PanelSamples samples(std::span<const double> extra = {}) const;

 private:
  int points_;
  int subdivisions_;
  std::vector<double> breaks_;
  GaussLegendre base_;
};

/// Sorts, clips to [0,1] and merges points closer than 1e-14.
std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b);

/// Approximates  \int_0^1 K(t,s) w(s) ds  with panels split at t and eta.
/// Exceptions thrown by `w` propagate unchanged.
double integrate_kernel(const ProblemParams& p, KernelKind kernel, double t,
                        const std::function<double(double)>& w, const QuadratureRule& rule);

}  // namespace tpbvp
