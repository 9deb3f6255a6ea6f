#include "doctest.h"

#include <cmath>

#include "dunkl/error.hpp"
#include "dunkl/radial_engine.hpp"

using namespace dunkl;

namespace {

template <class F>
ErrorCode code_of(F f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidArgument;
}

const Phi kSquare = Phi::power(1.0, 2.0);

}  // namespace

TEST_CASE("linear profile against its series") {
    const auto sol = integrate_radial_ivp(4.0, Phi::linear(1.0), 1.0, 1.0);
    CHECK(ProfileInterpolant(sol).value(1.0) == doctest::Approx(1.130318207984970).epsilon(1e-9));
    CHECK(sol.stop_reason == StopReason::Horizon);
}

TEST_CASE("zero seed stays at zero, negative seed is rejected") {
    const auto sol = integrate_radial_ivp(4.0, kSquare, 0.0, 2.0);
    for (double u : sol.values) CHECK(u == 0.0);
    CHECK(code_of([] { integrate_radial_ivp(4.0, kSquare, -0.1, 1.0); }) == ErrorCode::NonPhysicalSeed);
}

TEST_CASE("output grid is honoured") {
    IvpControls c;
    c.output_grid = uniform_grid(1.0, 11);
    const auto sol = integrate_radial_ivp(3.0, kSquare, 0.5, 1.0, c);
    REQUIRE(sol.grid.size() == 11);
    for (std::size_t i = 0; i < 11; ++i) CHECK(sol.grid[i] == doctest::Approx(0.1 * i));
}

TEST_CASE("KO integrals against frozen oracle values") {
    CHECK(ko_integral(kSquare, 0.5, InnerLimit::FromA).value == doctest::Approx(5.948954850804351).epsilon(1e-8));
    CHECK(ko_integral(kSquare, 1.0, InnerLimit::FromA).value == doctest::Approx(4.206546315976363).epsilon(1e-8));
    CHECK(ko_integral(kSquare, 2.0, InnerLimit::FromA).value == doctest::Approx(2.974477425402176).epsilon(1e-8));
    CHECK(ko_integral(kSquare, 1.0, InnerLimit::FromZero).value == doctest::Approx(3.4641016151377546).epsilon(1e-8));
    CHECK(ko_integral(Phi::power(1, 3), 1.0, InnerLimit::FromZero).value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(ko_integral(Phi::exp_minus_one(1), 1.0, InnerLimit::FromA).value ==
          doctest::Approx(2.184756635704885).epsilon(1e-8));
}

TEST_CASE("KO classification") {
    CHECK(ko_report(Phi::linear(1), 1.0).classification == KOClass::Holds);
    CHECK(ko_integral(Phi::linear(1), 1.0, InnerLimit::FromZero).divergent);
    CHECK(ko_report(kSquare, 1.0).classification == KOClass::Fails);
    CHECK(ko_report(Phi::parse("power:1,1.5"), 1.0).classification == KOClass::Fails);
    CHECK(classify_entire_solution(4.0, Phi::linear(1)) == EntireSolution::Exists);
    CHECK(classify_entire_solution(4.0, kSquare) == EntireSolution::NotExists);
}

TEST_CASE("blow-up radii against frozen oracle values") {
    const double want[] = {3.96458563452, 4.31449626173, 4.62157417032};
    for (int m = 3; m <= 5; ++m) {
        const auto b = blowup_radius(m, kSquare, 1.0);
        CAPTURE(m);
        CHECK(b.status == BlowupStatus::Finite);
        CHECK(b.bracket_low <= want[m - 3] * (1 + 1e-9));
        CHECK(b.bracket_high >= want[m - 3] * (1 - 1e-9));
        CHECK(b.radius == doctest::Approx(want[m - 3]).epsilon(2e-6));
    }
}

TEST_CASE("linear growth never blows up") {
    const auto b = blowup_radius(4.0, Phi::linear(1), 1.0);
    CHECK(b.status == BlowupStatus::InfiniteUpToHorizon);
}

TEST_CASE("radius decreases in the seed and in m") {
    const double r_small = blowup_radius(4.0, kSquare, 1e-6).radius;
    const double r_one = blowup_radius(4.0, kSquare, 1.0).radius;
    const double r_big = blowup_radius(4.0, kSquare, 1e6).radius;
    CHECK(r_small > r_one);
    CHECK(r_one > r_big);
    const auto e = Phi::exp_minus_one(1);
    CHECK(blowup_radius(3.0, e, 1.0).radius <= blowup_radius(5.0, e, 1.0).radius);
}

TEST_CASE("sandwich bounds") {
    for (double m : {3.0, 4.0, 6.5}) {
        const auto r = sandwich_check(m, kSquare, 1.0);
        REQUIRE(r.sandwich);
        CHECK(r.sandwich->ok);
    }
    CHECK(code_of([] { sandwich_check(4.0, Phi::linear(1), 1.0); }) == ErrorCode::KOHoldsNoBlowup);
}

TEST_CASE("seed search brackets the target") {
    const auto s = find_seed_for_radius(4.0, kSquare, 1.0);
    CHECK(s.radius == doctest::Approx(1.0).epsilon(1e-6));
    REQUIRE(!s.history.empty());
    for (const auto& step : s.history) {
        CHECK(step.radius_low >= 1.0);
        CHECK(step.radius_high <= 1.0);
        CHECK(step.low <= step.high);
    }
    CHECK(code_of([] { find_seed_for_radius(4.0, Phi::linear(1), 1.0); }) == ErrorCode::KOHoldsNoBlowup);
}

TEST_CASE("blow-up profile on the unit ball") {
    const auto sol = solve_blowup_problem(4.0, kSquare, 1.0);
    const ProfileInterpolant p(sol);
    CHECK(p.value(0.99) > 1e3);
    CHECK(radial_ode_residual(4.0, kSquare, sol, true) <= 1e-6);
    for (std::size_t i = 1; i < sol.values.size(); ++i) CHECK(sol.values[i] >= sol.values[i - 1]);
}

TEST_CASE("Dirichlet shooting") {
    const auto zero = solve_radial_dirichlet_shooting(4.0, kSquare, 1.0, 0.0);
    for (double u : zero.values) CHECK(u == 0.0);
    const auto sol = solve_radial_dirichlet_shooting(4.0, Phi::linear(1), 1.0, 1.0);
    CHECK(sol.values.front() == doctest::Approx(0.8847066188402913).epsilon(1e-9));
    CHECK(sol.values.back() == doctest::Approx(1.0).epsilon(1e-10));
    for (double u : sol.values) CHECK(u <= 1.0 + 1e-12);
    const auto m3 = solve_radial_dirichlet_shooting(3.0, Phi::linear(1), 1.0, 1.0);
    CHECK(m3.values.front() == doctest::Approx(0.8509181282393215).epsilon(1e-9));
}
