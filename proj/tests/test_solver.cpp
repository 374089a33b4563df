#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "oracles/bvp_oracle.hpp"
#include "tpbvp/errors.hpp"
#include "tpbvp/solver.hpp"

using namespace tpbvp;

namespace {
const ProblemParams kExample(1.5, 0.5);
constexpr const char* kF = "(t^2+1)*(exp(-y)+sqrt(abs(yp)))";
constexpr const char* kH = "(y+1)^2*atan(abs(yp)+1)";

double base(double t) { return 0.625 * t * t - t * t * t / 6.0; }
double dbase(double t) { return 1.25 * t - 0.5 * t * t; }

GridFunction sampled(std::span<const double> nodes, const oracle::Poly& p) {
  const auto d = p.derivative();
  return GridFunction::sample({nodes.begin(), nodes.end()}, [&](double t) { return p(t); }, [&](double t) { return d(t); });
}
}  // namespace

TEST_CASE("config validation") {
  SolveConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = [](auto mutate) {
    SolveConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), InputError);
  };
  bad([](SolveConfig& c) { c.max_iters = 0; });
  bad([](SolveConfig& c) { c.tol = 0.0; });
  bad([](SolveConfig& c) { c.tol = std::nan(""); });
  bad([](SolveConfig& c) { c.damping = 0.0; });
  bad([](SolveConfig& c) { c.damping = 1.5; });
  bad([](SolveConfig& c) { c.nodes = 8; });
  bad([](SolveConfig& c) { c.quad_points = 1; });
  bad([](SolveConfig& c) { c.initial = InitialKind::provided; });
  bad([](SolveConfig& c) { c.initial = InitialKind::constant; c.initial_value = INFINITY; });
}

TEST_CASE("zero problem converges immediately") {
  const auto r = solve(kExample, parse("0"), parse("0"), SolveConfig{});
  CHECK(r.report.converged);
  CHECK(r.report.iters == 1);
  CHECK(c1_norm(r.state.u) == 0.0);
  CHECK(c1_norm(r.state.v) == 0.0);
  CHECK(r.report.residual_u == 0.0);
  // Zero is in the cone but not positive.
  CHECK(r.report.cone_ok_u);
  CHECK_FALSE(r.report.positivity_ok);
}

TEST_CASE("constant right-hand sides are solved exactly in one sweep") {
  SolveConfig cfg;
  cfg.max_iters = 1;
  const auto one = solve(kExample, parse("1"), parse("1"), cfg);
  CHECK_FALSE(one.report.converged);  // a single step cannot be observed to be small
  CHECK(one.report.fixed_point_defect_u <= 1e-14);
  CHECK(one.report.fixed_point_defect_v <= 1e-14);

  const auto r = solve(kExample, parse("1"), parse("1"), SolveConfig{});
  CHECK(r.report.converged);
  CHECK(r.report.iters == 2);
  CHECK(r.report.history[1] == 0.0);
  for (const auto* g : {&r.state.u, &r.state.v}) {
    const auto exact = GridFunction::sample({g->nodes().begin(), g->nodes().end()}, base, dbase);
    CHECK(c1_norm(g->combine(1.0, exact, -1.0)) <= 1e-10);
  }
  CHECK(r.report.bc_defect_u <= 1e-12);
  CHECK(r.report.bc_defect_v <= 1e-12);
  // Rounding in the interpolated values, divided by H^3, puts a floor under the
  // residual; clustered Chebyshev ends raise it further.
  CHECK(r.report.residual_u <= 1e-6);
  CHECK(r.report.residual_v <= 1e-6);
  SolveConfig coarse;
  coarse.nodes = 9;
  CHECK(solve(kExample, parse("1"), parse("1"), coarse).report.residual_u <= 1e-9);
  CHECK(r.report.positivity_ok);
  CHECK(r.report.monotone_ok);
}

TEST_CASE("linear coupled system matches the polynomial oracle") {
  // f = 1 + t, h = 2: the state does not enter, so u and v are explicit.
  const auto r = solve(kExample, parse("1+t"), parse("2"), SolveConfig{});
  REQUIRE(r.report.converged);
  const auto u = oracle::linear_bvp_solution({1.0, 1.0}, 1.5, 0.5);
  const auto v = oracle::linear_bvp_solution({2.0}, 1.5, 0.5);
  CHECK(c1_norm(r.state.u.combine(1.0, sampled(r.state.u.nodes(), u), -1.0)) <= 1e-12);
  CHECK(c1_norm(r.state.v.combine(1.0, sampled(r.state.v.nodes(), v), -1.0)) <= 1e-12);
}

TEST_CASE("constant initial state and damping") {
  SolveConfig cfg;
  cfg.initial = InitialKind::constant;
  cfg.initial_value = 3.0;
  cfg.damping = 0.5;
  const auto r = solve(kExample, parse("1+y/10"), parse("1+yp/10"), cfg);
  CHECK(r.report.converged);
  CHECK(r.report.final_damping == 0.5);
  CHECK(r.report.fixed_point_defect_u <= 1e-9);
  CHECK(r.report.fixed_point_defect_v <= 1e-9);
}

TEST_CASE("provided initial state fixes the grid") {
  SolveConfig cfg;
  cfg.initial = InitialKind::provided;
  cfg.initial_state = CoupledState{GridFunction::zero(problem_nodes(kExample, 17)),
                                   GridFunction::zero(problem_nodes(kExample, 17))};
  const auto r = solve(kExample, parse("1"), parse("1"), cfg);
  CHECK(r.report.converged);
  CHECK(r.state.u.size() == cfg.initial_state->u.size());

  const auto plain = GridFunction::zero(chebyshev_nodes(17, {}));
  cfg.initial_state = CoupledState{plain, plain};
  CHECK_THROWS_AS(solve(kExample, parse("1"), parse("1"), cfg), InputError);
}

TEST_CASE("expansive linear growth is reported as divergence") {
  SolveConfig cfg;
  cfg.nodes = 17;
  const auto r = solve(kExample, parse("50*(1+y+yp)"), parse("50*(1+y+yp)"), cfg);
  CHECK_FALSE(r.report.converged);
  CHECK(r.report.diverged);
  CHECK(r.report.iters < cfg.max_iters);
}

TEST_CASE("overflow inside the right-hand side is an evaluation error") {
  SolveConfig cfg;
  cfg.nodes = 17;
  CHECK_THROWS_WITH_AS(solve(kExample, parse("100*(1+y)^3"), parse("100*(1+y)^3"), cfg),
                       doctest::Contains("sweep"), EvalError);
}

TEST_CASE("evaluation errors carry the sweep index") {
  try {
    solve(kExample, parse("1"), parse("log(y-1)"), SolveConfig{});
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(std::string(e.what()).find("sweep 1") != std::string::npos);
  }
}

TEST_CASE("example system converges to a positive increasing solution") {
  SolveConfig cfg;
  cfg.nodes = 1537;
  const auto r = solve(kExample, parse(kF), parse(kH), cfg);
  const auto& rep = r.report;
  CHECK(rep.converged);
  CHECK(rep.iters <= 20);
  CHECK(rep.positivity_ok);
  CHECK(rep.monotone_ok);
  CHECK(rep.residual_u <= 1e-4);
  CHECK(rep.residual_v <= 1e-4);
  CHECK(rep.bc_defect_u <= 1e-8);
  CHECK(rep.bc_defect_v <= 1e-8);
  CHECK(rep.fixed_point_defect_u <= 1e-9);
  CHECK(interpolate(r.state.u, 1.0).value == doctest::Approx(1.02702324267).epsilon(1e-9));
  // The value part of the cone condition holds; the derivative part does not.
  CHECK(rep.cone_u.value_ok);
  CHECK(rep.cone_v.value_ok);
  CHECK_FALSE(rep.cone_u.deriv_ok);
  CHECK_FALSE(rep.cone_v.deriv_ok);
  CHECK(rep.cone_u.cone_min_deriv_t == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("residual of exact and perturbed polynomials") {
  const auto nodes = problem_nodes(kExample, 9);
  const oracle::Poly p{{0.0, 0.0, 0.625, -1.0 / 6.0}};
  const auto g = sampled(nodes, p);
  const CoupledState exact{g, g};
  const auto r = residual(exact, parse("1"), parse("1"));
  CHECK(r.res_u <= 1e-8);
  CHECK(r.res_v <= 1e-8);

  const auto zero = GridFunction::zero(nodes);
  CHECK(residual(CoupledState{zero, zero}, parse("0"), parse("0")).res_u == 0.0);

  // Adding t^3/6 shifts the third derivative by exactly one.
  const oracle::Poly q{{0.0, 0.0, 0.625, 0.0}};
  double where = -1.0;
  const double res = third_order_residual(sampled(nodes, q), g, parse("1"), 1001, 3, &where);
  CHECK(res == doctest::Approx(1.0).epsilon(1e-8));

  // Uniform nodes, and the rounding floor on a clustered Chebyshev grid.
  std::vector<double> uni(33);
  for (std::size_t i = 0; i < uni.size(); ++i) uni[i] = static_cast<double>(i) / 32.0;
  const auto gu = sampled(uni, p);
  CHECK(residual(CoupledState{gu, gu}, parse("1"), parse("1")).res_u <= 1e-8);
  const auto gc = sampled(problem_nodes(kExample, 65), p);
  CHECK(residual(CoupledState{gc, gc}, parse("1"), parse("1")).res_u <= 1e-7);
  CHECK(where >= 0.003);
  CHECK(where <= 0.997);

  CHECK_THROWS_AS(residual(exact, parse("1"), parse("1"), 5, 3), InputError);
}

TEST_CASE("residual of the example shrinks as nodes are added") {
  double last = 1e300;
  for (int n : {65, 257, 1025}) {
    SolveConfig cfg;
    cfg.nodes = n;
    cfg.tol = 1e-8;
    const auto r = solve(kExample, parse(kF), parse(kH), cfg);
    const double res = std::max(r.report.residual_u, r.report.residual_v);
    CHECK(res < last);
    last = res;
  }
}

TEST_CASE("boundary-condition defect") {
  const auto nodes = problem_nodes(kExample, 33);
  CHECK(bc_defect(kExample, GridFunction::zero(nodes)) == 0.0);
  CHECK(bc_defect(kExample, GridFunction::sample(nodes, base, dbase)) <= 1e-12);
  // g = t: |g'(0)| = 1 dominates |g'(1) - alpha g'(eta)| = alpha - 1.
  const auto lin = GridFunction::sample(nodes, [](double t) { return t; }, [](double) { return 1.0; });
  CHECK(bc_defect(kExample, lin) == 1.0);
  const auto tail = GridFunction::sample(nodes, [](double t) { return t * t * t; }, [](double t) { return 3 * t * t; });
  CHECK(bc_defect(kExample, tail) == doctest::Approx(3.0 - 1.5 * 0.75));
  const auto sq = GridFunction::sample(nodes, [](double t) { return 1 + t * t; }, [](double t) { return 2 * t; });
  CHECK(bc_defect(kExample, sq) == doctest::Approx(1.0));
}
