#include "tpbvp/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tpbvp/errors.hpp"

namespace tpbvp {

GridFunction::GridFunction(std::vector<double> nodes, std::vector<double> values, std::vector<double> derivs)
    : nodes_(std::move(nodes)), values_(std::move(values)), derivs_(std::move(derivs)) {
  if (nodes_.size() < 2) throw InputError("grid function needs at least two nodes");
  if (values_.size() != nodes_.size() || derivs_.size() != nodes_.size()) {
    throw InputError("grid function: values/derivs size does not match node count");
  }
  if (nodes_.front() != 0.0 || nodes_.back() != 1.0) {
    throw InputError("grid function nodes must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) throw InputError("grid function nodes must be strictly increasing");
  }
}

GridFunction GridFunction::zero(std::vector<double> nodes) {
  const std::size_t n = nodes.size();
  return GridFunction(std::move(nodes), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0));
}

GridFunction GridFunction::sample(std::vector<double> nodes, const std::function<double(double)>& value,
                                  const std::function<double(double)>& deriv) {
  std::vector<double> v(nodes.size()), d(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    v[i] = value(nodes[i]);
    d[i] = deriv(nodes[i]);
  }
  return GridFunction(std::move(nodes), std::move(v), std::move(d));
}

std::ptrdiff_t GridFunction::find_node(double t) const noexcept {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
  if (it != nodes_.end() && *it == t) return it - nodes_.begin();
  return -1;
}

GridFunction GridFunction::combine(double a, const GridFunction& other, double b) const {
  if (other.nodes_ != nodes_) throw InputError("cannot combine grid functions on different nodes");
  std::vector<double> v(nodes_.size()), d(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    v[i] = a * values_[i] + b * other.values_[i];
    d[i] = a * derivs_[i] + b * other.derivs_[i];
  }
  return GridFunction(nodes_, std::move(v), std::move(d));
}

namespace {

std::size_t panel_of(std::span<const double> nodes, double t) {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
  auto i = static_cast<std::size_t>(it - nodes.begin());
  if (i == 0) return 0;
  return std::min(i - 1, nodes.size() - 2);
}

}  // namespace

Point1 interpolate(const GridFunction& g, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("interpolation point " + std::to_string(t) + " outside [0,1]");
  const auto nodes = g.nodes();
  const std::size_t i = panel_of(nodes, t);
  const double a = nodes[i];
  const double b = nodes[i + 1];
  if (t == a) return {g.values()[i], g.derivs()[i]};
  if (t == b) return {g.values()[i + 1], g.derivs()[i + 1]};

  const double h = b - a;
  const double x = (t - a) / h;
  const double x2 = x * x;
  const double x3 = x2 * x;
  const double y0 = g.values()[i], y1 = g.values()[i + 1];
  const double d0 = g.derivs()[i], d1 = g.derivs()[i + 1];

  const double value = (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * h * d0 + (-2 * x3 + 3 * x2) * y1 +
                       (x3 - x2) * h * d1;
  const double deriv = (6 * x2 - 6 * x) / h * (y0 - y1) + (3 * x2 - 4 * x + 1) * d0 + (3 * x2 - 2 * x) * d1;
  return {value, deriv};
}

long double interpolate_value_ld(const GridFunction& g, long double t) {
  if (!(t >= 0.0L && t <= 1.0L)) throw DomainError("interpolation point outside [0,1]");
  const auto nodes = g.nodes();
  const std::size_t i = panel_of(nodes, static_cast<double>(t));
  const long double a = nodes[i];
  const long double h = static_cast<long double>(nodes[i + 1]) - a;
  const long double x = (t - a) / h;
  const long double x2 = x * x;
  const long double x3 = x2 * x;
  const long double y0 = g.values()[i], y1 = g.values()[i + 1];
  const long double d0 = g.derivs()[i], d1 = g.derivs()[i + 1];
  return (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * h * d0 + (-2 * x3 + 3 * x2) * y1 + (x3 - x2) * h * d1;
}

double sup_norm(const GridFunction& g) noexcept {
  double m = 0.0;
  for (double v : g.values()) m = std::max(m, std::fabs(v));
  return m;
}

double sup_norm_deriv(const GridFunction& g) noexcept {
  double m = 0.0;
  for (double d : g.derivs()) m = std::max(m, std::fabs(d));
  return m;
}

double c1_norm(const GridFunction& g) noexcept { return std::max(sup_norm(g), sup_norm_deriv(g)); }

std::vector<double> chebyshev_nodes(int n, std::span<const double> extra) {
  if (n < 2) throw InputError("need at least two Chebyshev nodes");
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    pts[static_cast<std::size_t>(k)] = 0.5 * (1.0 - std::cos(std::numbers::pi * k / (n - 1)));
  }
  pts.front() = 0.0;
  pts.back() = 1.0;
  for (double e : extra) {
    if (!(e >= 0.0 && e <= 1.0)) throw DomainError("extra node outside [0,1]");
    auto near = std::find_if(pts.begin(), pts.end(), [e](double x) { return std::fabs(x - e) < 1e-12; });
    if (near != pts.end()) {
      if (*near != 0.0 && *near != 1.0) *near = e;
    } else {
      pts.push_back(e);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<double> problem_nodes(const ProblemParams& p, int n) {
  const double extra[] = {p.cone_lo(), p.cone_hi()};
  return chebyshev_nodes(n, extra);
}

CoupledState::CoupledState(GridFunction u_, GridFunction v_) : u(std::move(u_)), v(std::move(v_)) {
  if (!std::equal(u.nodes().begin(), u.nodes().end(), v.nodes().begin(), v.nodes().end())) {
    throw InputError("u and v must share the same nodes");
  }
}

}  // namespace tpbvp
