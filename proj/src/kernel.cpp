#include "tpbvp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpbvp/errors.hpp"

namespace tpbvp {

namespace {

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " = " + std::to_string(x) + " lies outside [0,1]");
  }
}

}  // namespace

ProblemParams::ProblemParams(double alpha, double eta) : alpha_(alpha), eta_(eta) {
  if (!std::isfinite(alpha) || !std::isfinite(eta)) {
    throw InputError("alpha and eta must be finite");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw InputError("eta = " + std::to_string(eta) + " violates 0<η<1 (0 < eta < 1)");
  }
  if (!(alpha > 1.0) || !(1.0 - alpha * eta >= kMinDenominator)) {
    throw InputError("alpha = " + std::to_string(alpha) + ", eta = " + std::to_string(eta) +
                     " violates 1<α<1/η (1 < alpha < 1/eta, with 1 - alpha*eta >= 1e-9)");
  }
  denom_ = 1.0 - alpha * eta;
  k0_ = eta * eta * std::min(alpha - 1.0, 1.0) / (2.0 * alpha * alpha * (1.0 + alpha));
  k1_ = std::min(alpha * eta, eta);
}

Branch select_branch(const ProblemParams& p, double t, double s) noexcept {
  const double eta = p.eta();
  if (s <= std::min(eta, t)) return Branch::s_below_eta_and_t;
  if (t <= s && s <= eta) return Branch::t_le_s_le_eta;
  if (eta <= s && s <= t) return Branch::eta_le_s_le_t;
  return Branch::s_above_eta_and_t;
}

double green_branch(const ProblemParams& p, Branch b, double t, double s) noexcept {
  const double a = p.alpha();
  const double d = p.denom();
  double v = 0.0;
  switch (b) {
    case Branch::s_below_eta_and_t:
      v = (2.0 * t * s - s * s) * d + t * t * s * (a - 1.0);
      break;
    case Branch::t_le_s_le_eta:
      v = t * t * d + t * t * s * (a - 1.0);
      break;
    case Branch::eta_le_s_le_t:
      v = (2.0 * t * s - s * s) * d + t * t * (a * p.eta() - s);
      break;
    case Branch::s_above_eta_and_t:
      v = t * t * (1.0 - s);
      break;
  }
  return v / (2.0 * d);
}

double green_dt_branch(const ProblemParams& p, Branch b, double t, double s) noexcept {
  const double a = p.alpha();
  const double d = p.denom();
  double v = 0.0;
  switch (b) {
    case Branch::s_below_eta_and_t:
      v = s * d + t * s * (a - 1.0);
      break;
    case Branch::t_le_s_le_eta:
      v = t * d + t * s * (a - 1.0);
      break;
    case Branch::eta_le_s_le_t:
      v = s * d + t * (a * p.eta() - s);
      break;
    case Branch::s_above_eta_and_t:
      v = t * (1.0 - s);
      break;
  }
  return v / d;
}

double green_unchecked(const ProblemParams& p, double t, double s) noexcept {
  return green_branch(p, select_branch(p, t, s), t, s);
}

double green_dt_unchecked(const ProblemParams& p, double t, double s) noexcept {
  return green_dt_branch(p, select_branch(p, t, s), t, s);
}

double green(const ProblemParams& p, double t, double s) {
  check_unit(t, "t");
  check_unit(s, "s");
  return green_unchecked(p, t, s);
}

double green_dt(const ProblemParams& p, double t, double s) {
  check_unit(t, "t");
  check_unit(s, "s");
  return green_dt_unchecked(p, t, s);
}

double g0_bound(const ProblemParams& p, double s) {
  check_unit(s, "s");
  return (1.0 + p.alpha()) / p.denom() * s * (1.0 - s);
}

double g1_bound(const ProblemParams& p, double s) {
  check_unit(s, "s");
  return (1.0 - s) / p.denom();
}

ConeConstants cone_constants(const ProblemParams& p) noexcept { return {p.k0(), p.k1()}; }

}  // namespace tpbvp
