#include "tpbvp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tpbvp/errors.hpp"

namespace tpbvp {

namespace {

struct Legendre {
  double value;
  double deriv;
};

// P_n(x) and P_n'(x) by the three-term recurrence; valid for |x| < 1.
Legendre legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 1) return {x, 1.0};
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw InputError("Gauss-Legendre rule needs at least one point");
  GaussLegendre r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const Legendre l = legendre(n, x);
      const double dx = l.value / l.deriv;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).deriv;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    r.nodes[lo] = 0.5 * (1.0 - x);
    r.nodes[hi] = 0.5 * (1.0 + x);
    r.weights[lo] = 0.5 * w;
    r.weights[hi] = 0.5 * w;
  }
  return r;
}

std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b) {
  std::vector<double> all;
  all.reserve(a.size() + b.size() + 2);
  all.push_back(0.0);
  all.push_back(1.0);
  for (double x : a) all.push_back(std::clamp(x, 0.0, 1.0));
  for (double x : b) all.push_back(std::clamp(x, 0.0, 1.0));
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  out.reserve(all.size());
  for (double x : all) {
    if (out.empty() || x - out.back() > 1e-14) out.push_back(x);
  }
  // keep exact endpoints
  out.front() = 0.0;
  if (out.back() != 1.0) {
    if (1.0 - out.back() <= 1e-14) {
      out.back() = 1.0;
    } else {
      out.push_back(1.0);
    }
  }
  return out;
}

QuadratureRule::QuadratureRule(int points_per_panel, std::vector<double> breakpoints, int subdivisions)
    : points_(points_per_panel), subdivisions_(subdivisions) {
  if (points_per_panel < 2) {
    throw InputError("quadrature needs at least 2 points per panel, got " + std::to_string(points_per_panel));
  }
  if (subdivisions < 1) throw InputError("quadrature subdivisions must be >= 1");
  for (double x : breakpoints) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("quadrature breakpoint outside [0,1]");
  }
  breaks_ = merge_breakpoints(breakpoints, {});
  base_ = gauss_legendre(points_per_panel);
}

QuadratureRule QuadratureRule::with_breakpoints(std::span<const double> extra) const {
  return QuadratureRule(points_, merge_breakpoints(breaks_, extra), subdivisions_);
}

QuadratureRule QuadratureRule::refined(int factor) const {
  return QuadratureRule(points_, breaks_, subdivisions_ * factor);
}

PanelSamples QuadratureRule::samples(std::span<const double> extra) const {
  const std::vector<double> br = extra.empty() ? breaks_ : merge_breakpoints(breaks_, extra);
  PanelSamples out;
  const std::size_t n = base_.nodes.size();
  out.points.reserve((br.size() - 1) * static_cast<std::size_t>(subdivisions_) * n);
  out.weights.reserve(out.points.capacity());
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double width = (br[i + 1] - br[i]) / subdivisions_;
    for (int k = 0; k < subdivisions_; ++k) {
      const double lo = br[i] + k * width;
      for (std::size_t q = 0; q < n; ++q) {
        out.points.push_back(lo + width * base_.nodes[q]);
        out.weights.push_back(width * base_.weights[q]);
      }
    }
  }
  return out;
}

double integrate_kernel(const ProblemParams& p, KernelKind kernel, double t,
                        const std::function<double(double)>& w, const QuadratureRule& rule) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t = " + std::to_string(t) + " lies outside [0,1]");
  const double extra[] = {t, p.eta()};
  const PanelSamples smp = rule.samples(extra);
  double sum = 0.0;
  for (std::size_t q = 0; q < smp.points.size(); ++q) {
    const double s = smp.points[q];
    sum += smp.weights[q] * eval_kernel(kernel, p, t, s) * w(s);
  }
  return sum;
}

}  // namespace tpbvp
