#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tpbvp/kernel.hpp"

namespace tpbvp {

/// A C^1 function on [0,1] stored as node values and node derivatives.
/// Nodes are strictly increasing with nodes.front() == 0 and nodes.back() == 1.
class GridFunction {
 public:
  GridFunction(std::vector<double> nodes, std::vector<double> values, std::vector<double> derivs);

  static GridFunction zero(std::vector<double> nodes);
  static GridFunction sample(std::vector<double> nodes, const std::function<double(double)>& value,
                             const std::function<double(double)>& deriv);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> derivs() const noexcept { return derivs_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Index of the node equal to t, or -1.
  std::ptrdiff_t find_node(double t) const noexcept;

  /// Linear combination a*this + b*other on the same nodes.
  GridFunction combine(double a, const GridFunction& other, double b) const;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> derivs_;
};

struct Point1 {
  double value;
  double deriv;
};

/// Piecewise cubic Hermite interpolation; returns stored data at nodes.
/// Throws DomainError outside [0,1].
Point1 interpolate(const GridFunction& g, double t);

/// Same interpolant evaluated in extended precision (used by the residual check).
long double interpolate_value_ld(const GridFunction& g, long double t);

/// max(max |values|, max |derivs|).
double c1_norm(const GridFunction& g) noexcept;
/// max |values|.
double sup_norm(const GridFunction& g) noexcept;
/// max |derivs|.
double sup_norm_deriv(const GridFunction& g) noexcept;

/// n Chebyshev-Lobatto points mapped to [0,1], merged with `extra` points.
/// A Chebyshev point within 1e-12 of an extra point is replaced by it.
std::vector<double> chebyshev_nodes(int n, std::span<const double> extra = {});

/// Default state nodes: chebyshev_nodes(n, {eta/alpha, eta}).
std::vector<double> problem_nodes(const ProblemParams& p, int n);

/// The pair (u, v) on a shared node set.
struct CoupledState {
  GridFunction u;
  GridFunction v;

  CoupledState(GridFunction u_, GridFunction v_);
};

}  // namespace tpbvp
