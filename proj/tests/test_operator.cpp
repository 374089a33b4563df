#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/bvp_oracle.hpp"
#include "oracles/random_params.hpp"
#include "tpbvp/errors.hpp"
#include "tpbvp/io.hpp"
#include "tpbvp/operator.hpp"
#include "tpbvp/reference.hpp"

using namespace tpbvp;

namespace {
const ProblemParams kExample(1.5, 0.5);
constexpr const char* kF = "(t^2+1)*(exp(-y)+sqrt(abs(yp)))";
constexpr const char* kH = "(y+1)^2*atan(abs(yp)+1)";

GridFunction random_cone_input(const ProblemParams& p, std::mt19937_64& rng, int n = 33) {
  // Nonnegative, nondecreasing: a*t + b*t^2 + c*(1 - cos(pi t / 2)) with a, b, c >= 0.
  std::uniform_real_distribution<double> u(0.0, 3.0);
  const double a = u(rng), b = u(rng), c = u(rng);
  return GridFunction::sample(
      problem_nodes(p, n), [=](double t) { return a * t + b * t * t + c * (1 - std::cos(std::numbers::pi * t / 2)); },
      [=](double t) { return a + 2 * b * t + c * std::numbers::pi / 2 * std::sin(std::numbers::pi * t / 2); });
}
}  // namespace

TEST_CASE("zero right-hand side gives the zero function") {
  const auto v = GridFunction::sample(problem_nodes(kExample, 17), [](double t) { return t; }, [](double) { return 1.0; });
  const auto w = apply_T1(kExample, parse("0"), v, QuadratureRule());
  CHECK(c1_norm(w) == 0.0);
  CHECK(c1_norm(apply_T2(kExample, parse("0*y"), v, QuadratureRule())) == 0.0);
}

TEST_CASE("constant right-hand side reproduces the closed-form solution") {
  const auto v = GridFunction::zero(problem_nodes(kExample, 65));
  for (const char* rhs : {"1", "1+0*y"}) {
    const auto w = apply_T1(kExample, parse(rhs), v, QuadratureRule());
    const auto w2 = apply_T2(kExample, parse(rhs), v, QuadratureRule());
    CHECK(w == w2);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double t = w.nodes()[i];
      CHECK(std::fabs(w.values()[i] - (0.625 * t * t - t * t * t / 6.0)) <= 1e-14);
      CHECK(std::fabs(w.derivs()[i] - (1.25 * t - 0.5 * t * t)) <= 1e-14);
    }
    CHECK(w.values()[0] == 0.0);
    CHECK(w.derivs()[0] == 0.0);
  }
}

TEST_CASE("example nonlinearities at the zero state") {
  const auto zero = GridFunction::zero(problem_nodes(kExample, 65));
  // f(t, 0, 0) = t^2 + 1.
  const auto u = oracle::linear_bvp_solution({1.0, 0.0, 1.0}, 1.5, 0.5);
  const auto du = u.derivative();
  const auto w = apply_T1(kExample, parse(kF), zero, QuadratureRule());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = w.nodes()[i];
    CHECK(std::fabs(w.values()[i] - u(t)) <= 1e-13);
    CHECK(std::fabs(w.derivs()[i] - du(t)) <= 1e-13);
  }
  // h(t, 0, 0) = atan(1) = pi/4.
  const auto z = apply_T2(kExample, parse(kH), zero, QuadratureRule());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double t = z.nodes()[i];
    CHECK(std::fabs(z.values()[i] - std::numbers::pi / 4 * (0.625 * t * t - t * t * t / 6.0)) <= 1e-14);
  }
}

TEST_CASE("parallel kernel agrees with the serial reference") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 10; ++k) {
    const auto p = k == 0 ? kExample : oracle::random_params(rng);
    const auto v = random_cone_input(p, rng, 21);
    for (const char* rhs : {kF, kH, "1+t*y"}) {
      ApplyStats sa, sb;
      const auto a = apply_operator(p, parse(rhs), v, QuadratureRule(6), &sa);
      const auto b = reference::apply_operator(p, parse(rhs), v, QuadratureRule(6), &sb);
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.values()[i] == doctest::Approx(b.values()[i]).epsilon(1e-13).scale(1.0));
        CHECK(a.derivs()[i] == doctest::Approx(b.derivs()[i]).epsilon(1e-13).scale(1.0));
      }
      CHECK(sa.clamped == 0);
      CHECK(sb.clamped == 0);
    }
  }
}

TEST_CASE("linearity in state-independent right-hand sides") {
  const auto v = GridFunction::zero(problem_nodes(kExample, 33));
  const QuadratureRule rule;
  const auto w1 = apply_T1(kExample, parse("1+t"), v, rule);
  const auto w2 = apply_T1(kExample, parse("exp(t)"), v, rule);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int k = 0; k < 20; ++k) {
    const double a = u(rng), b = u(rng);
    const std::string src = io::format_real(a) + "*(1+t)+" + io::format_real(b) + "*exp(t)";
    const auto w = apply_T1(kExample, parse(src), v, rule);
    const auto combo = w1.combine(a, w2, b);
    CHECK(c1_norm(w.combine(1.0, combo, -1.0)) <= 1e-12);
  }
}

TEST_CASE("output derivatives are consistent with output values") {
  std::vector<double> nodes(201);
  for (int i = 0; i <= 200; ++i) nodes[static_cast<std::size_t>(i)] = i / 200.0;
  nodes.back() = 1.0;
  const auto v = GridFunction::sample(nodes, [](double t) { return t * t; }, [](double t) { return 2 * t; });
  const auto w = apply_T1(kExample, parse(kF), v, QuadratureRule());
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    const double fd = (w.values()[i + 1] - w.values()[i - 1]) / (nodes[i + 1] - nodes[i - 1]);
    CHECK(std::fabs(fd - w.derivs()[i]) <= 1e-4);
  }
}

TEST_CASE("nonnegative right-hand sides give nonnegative nondecreasing outputs") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20; ++k) {
    const auto p = oracle::random_params(rng);
    const auto v = random_cone_input(p, rng);
    for (const char* rhs : {kF, kH}) {
      const auto w = apply_operator(p, parse(rhs), v, QuadratureRule());
      for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(w.values()[i] >= -1e-12);
        CHECK(w.derivs()[i] >= -1e-12);
      }
    }
  }
}

TEST_CASE("negative interpolated inputs are clamped and counted") {
  const auto v = GridFunction::sample(problem_nodes(kExample, 17), [](double t) { return -t; },
                                      [](double) { return -1.0; });
  ApplyStats stats;
  const auto w = apply_T1(kExample, parse("sqrt(y)+sqrt(yp)+1"), v, QuadratureRule(), &stats);
  CHECK(stats.clamped == stats.samples);
  CHECK(stats.samples > 0);
  // Clamped to zero, the right-hand side is 1.
  CHECK(w.values().back() == doctest::Approx(11.0 / 24.0).epsilon(1e-14));
}

TEST_CASE("evaluation errors propagate out of the parallel region") {
  const auto v = GridFunction::zero(problem_nodes(kExample, 17));
  CHECK_THROWS_AS(apply_T1(kExample, parse("log(y)"), v, QuadratureRule()), EvalError);
  CHECK_THROWS_AS(reference::apply_operator(kExample, parse("1/y"), v, QuadratureRule()), EvalError);
}
