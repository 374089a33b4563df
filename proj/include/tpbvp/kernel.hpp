#pragma once

// Green's function of  -u''' = q,  u(0) = u'(0) = 0,  u'(1) = alpha * u'(eta)
// together with its t-derivative, the majorants g0, g1 and the cone constants.

namespace tpbvp {

/// Immutable problem parameters. Construction enforces 0 < eta < 1 and
/// 1 < alpha < 1/eta (with 1 - alpha*eta >= kMinDenominator).
class ProblemParams {
 public:
  static constexpr double kMinDenominator = 1e-9;

  ProblemParams(double alpha, double eta);

  double alpha() const noexcept { return alpha_; }
  double eta() const noexcept { return eta_; }
  double k0() const noexcept { return k0_; }
  double k1() const noexcept { return k1_; }
  /// 1 - alpha*eta, strictly positive.
  double denom() const noexcept { return denom_; }
  /// Left end eta/alpha of the cone interval [eta/alpha, eta].
  double cone_lo() const noexcept { return eta_ / alpha_; }
  double cone_hi() const noexcept { return eta_; }

  friend bool operator==(const ProblemParams&, const ProblemParams&) = default;

 private:
  double alpha_;
  double eta_;
  double denom_;
  double k0_;
  double k1_;
};

/// Which kernel to integrate against.
enum class KernelKind { green, green_dt };

/// The four pieces of the kernel, in the order used for tie-breaking.
enum class Branch {
  s_below_eta_and_t,  ///< s <= min{eta, t}
  t_le_s_le_eta,      ///< t <= s <= eta
  eta_le_s_le_t,      ///< eta <= s <= t
  s_above_eta_and_t,  ///< max{eta, t} <= s
};

/// First branch (in listed order) whose condition holds at (t, s).
Branch select_branch(const ProblemParams& p, double t, double s) noexcept;

/// Raw branch formulas, evaluated regardless of whether (t, s) lies in the
/// branch's region. Used to check continuity across seams.
double green_branch(const ProblemParams& p, Branch b, double t, double s) noexcept;
double green_dt_branch(const ProblemParams& p, Branch b, double t, double s) noexcept;

/// G(t, s). Throws DomainError outside the unit square.
double green(const ProblemParams& p, double t, double s);
/// dG/dt(t, s). Throws DomainError outside the unit square.
double green_dt(const ProblemParams& p, double t, double s);

/// Unchecked variants for inner loops; caller guarantees (t, s) in [0,1]^2.
double green_unchecked(const ProblemParams& p, double t, double s) noexcept;
double green_dt_unchecked(const ProblemParams& p, double t, double s) noexcept;

inline double eval_kernel(KernelKind k, const ProblemParams& p, double t, double s) noexcept {
  return k == KernelKind::green ? green_unchecked(p, t, s) : green_dt_unchecked(p, t, s);
}

/// g0(s) = (1 + alpha) / (1 - alpha*eta) * s * (1 - s).
double g0_bound(const ProblemParams& p, double s);
/// g1(s) = (1 - s) / (1 - alpha*eta).
double g1_bound(const ProblemParams& p, double s);

struct ConeConstants {
  double k0;
  double k1;
};

/// k0 = eta^2 min{alpha-1, 1} / (2 alpha^2 (1+alpha)),  k1 = min{alpha*eta, eta}.
ConeConstants cone_constants(const ProblemParams& p) noexcept;

}  // namespace tpbvp
