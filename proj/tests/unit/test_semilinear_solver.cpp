#include "doctest.h"

#include <cmath>

#include "dunkl/error.hpp"
#include "dunkl/semilinear_solver.hpp"

using namespace dunkl;

TEST_CASE("zero boundary data") {
    const DirichletProblem prob{4.0, Phi::power(1, 2), 1.0, 0.0};
    const auto r = picard_solve(prob);
    CHECK(r.iterations == 1);
    for (double u : r.solution.values) CHECK(u == 0.0);
}

TEST_CASE("linear problem against frozen oracle values") {
    const DirichletProblem prob{4.0, Phi::linear(1), 1.0, 1.0};
    const auto r = picard_solve(prob);
    const auto& g = r.solution.grid;
    const auto& u = r.solution.values;
    REQUIRE(g.size() == 401);
    CHECK(u[0] == doctest::Approx(0.8847066188402913).epsilon(1e-8));
    CHECK(u[100] == doctest::Approx(0.8916364121572610).epsilon(1e-8));
    CHECK(u[200] == doctest::Approx(0.9126431957621815).epsilon(1e-8));
    CHECK(u[300] == doctest::Approx(0.9483877106254490).epsilon(1e-8));
}

TEST_CASE("square nonlinearity verifies") {
    const DirichletProblem prob{4.0, Phi::power(1, 2), 1.0, 1.0};
    const auto r = picard_solve(prob);
    const auto rep = verify_solution(prob, r.solution);
    CHECK(rep.fixedpoint_residual <= 1e-9);
    CHECK(rep.boundary_error <= 1e-12);
    CHECK(rep.bounds_ok);
    CHECK(rep.ode_residual <= 1e-4);
}

TEST_CASE("constant candidate has the predicted residual") {
    const DirichletProblem prob{4.0, Phi::power(1, 2), 1.0, 1.5};
    RadialSolution flat;
    flat.grid = uniform_grid(1.0, 401);
    flat.values.assign(401, 1.5);
    flat.derivatives.assign(401, 0.0);
    const auto rep = verify_solution(prob, flat);
    CHECK(rep.fixedpoint_residual == doctest::Approx(2.25 / 8.0).epsilon(1e-10));
}

TEST_CASE("comparison and method agreement") {
    const Phi phi = Phi::power(1, 2);
    const auto u = picard_solve({4.0, phi, 1.0, 2.0}).solution;
    const auto v = picard_solve({4.0, phi, 1.0, 1.0}).solution;
    CHECK(comparison_check(u, v));
    CHECK_FALSE(comparison_check(v, u));
    const auto s = solve_radial_dirichlet_shooting(4.0, phi, 1.0, 2.0);
    CHECK(comparison_check(u, s));
    CHECK(comparison_check(s, u));
    CHECK(sup_distance(u, s) <= 1e-8);
}

TEST_CASE("invalid problems") {
    CHECK_THROWS_AS(picard_solve({2.0, Phi::linear(1), 1.0, 1.0}), Error);
    CHECK_THROWS_AS(picard_solve({4.0, Phi::linear(1), -1.0, 1.0}), Error);
    CHECK_THROWS_AS(picard_solve({4.0, Phi::linear(1), 1.0, -1.0}), Error);
}
