#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "dunkl/error.hpp"
#include "dunkl/green_kernels.hpp"
#include "dunkl/io.hpp"
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

const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

}  // namespace

TEST_CASE("Gaussian constants against frozen oracle values") {
    CHECK(kernel_context(io::parse_system("a1xa1:0.75")).c_k == doctest::Approx(0.4303411133170731).epsilon(1e-9));
    CHECK(kernel_context(io::parse_system("a1:1")).c_k == doctest::Approx(0.5641895835477563).epsilon(1e-9));
}

TEST_CASE("k = 0 reduces to the Gaussian constant pi^{-d/2}") {
    const auto ctx = kernel_context(io::parse_system("a1xa1xa1:0"));
    CHECK(ctx.c_k == doctest::Approx(std::pow(std::numbers::pi, -1.5)).epsilon(1e-10));
}

TEST_CASE("mehta constant rejects d > 3") {
    CHECK(code_of([] { mehta_constant(io::parse_system("a1xa1xa1xa1:0.5")); }) == ErrorCode::DimensionTooLarge);
}

TEST_CASE("ball potential") {
    CHECK(green_potential_ball(4, 1, 0) == doctest::Approx(0.25));
    CHECK(green_potential_ball(4, 1, 1) == doctest::Approx(0.125));
    CHECK(green_potential_ball(4, 1, 2) == doctest::Approx(1.0 / 32));
}

TEST_CASE("annulus bound") {
    CHECK(green_annulus_bound(4, 1, 2) == doctest::Approx(2.0));
    CHECK(code_of([] { green_annulus_bound(4, 2, 2); }) == ErrorCode::BadRadii);
    CHECK(code_of([] { green_annulus_bound(4, 3, 2); }) == ErrorCode::BadRadii);
}

TEST_CASE("Green kernel at the origin") {
    const auto ctx = KernelContext::make(3.0, kInvSqrtPi);
    CHECK(green_origin(ctx, 1.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(code_of([&] { green_origin(ctx, 0.0); }) == ErrorCode::OriginSingularity);
    const auto c5 = KernelContext::make(5.0, 0.3);
    CHECK(green_origin(c5, 2.0) == doctest::Approx(std::pow(2.0, -3.0) * green_origin(c5, 1.0)).epsilon(1e-14));
    CHECK(green_pointwise_bound(c5, 1.3, 0.0) == doctest::Approx(green_origin(c5, 1.3)).epsilon(1e-14));
}

TEST_CASE("heat kernel") {
    const auto ctx = KernelContext::make(5.0, 0.3);
    CHECK(heat_kernel_origin(ctx, 0.7, 0.0) == doctest::Approx(0.3 * std::pow(2.8, -2.5)).epsilon(1e-14));
    CHECK(heat_kernel_upper_bound(ctx, 0.7, 1.1, 0.0) == heat_kernel_origin(ctx, 0.7, 1.1));
    CHECK(std::isfinite(heat_kernel_origin(ctx, 1e-12, 0.5)));

    // int_0^inf p_t(x, 0) dt = G(x, 0)
    boost::math::quadrature::exp_sinh<double> es;
    const double rho = 0.8;
    const double integral = es.integrate([&](double t) { return heat_kernel_origin(ctx, t, rho); });
    CHECK(integral == doctest::Approx(green_origin(ctx, rho)).epsilon(1e-6));

    // total mass 1 with the sphere constant
    const double area = sphere_weight_constant(ctx);
    const double mass = es.integrate([&](double r) {
        const double p = heat_kernel_origin(ctx, 0.7, r);
        return p == 0.0 ? 0.0 : area * std::pow(r, ctx.m - 1) * p;
    });
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("expected exit time") {
    CHECK(expected_exit_time_ball(5, 1, 0) == doctest::Approx(0.1));
    CHECK(expected_exit_time_ball(5, 1, 1) == 0.0);
    CHECK(code_of([] { expected_exit_time_ball(5, 1, 1.5); }) == ErrorCode::OutsideBall);
}

TEST_CASE("Green operator on radial data") {
    const auto grid = uniform_grid(1.0, 101);
    const auto one = green_operator_radial(4.0, 1.0, [](double) { return 1.0; }, grid);
    CHECK(one.values.front() == doctest::Approx(0.125).epsilon(1e-12));
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(one.values[i] == doctest::Approx(expected_exit_time_ball(4.0, 1.0, grid[i])).epsilon(1e-12));
    CHECK(std::abs(one.values.back()) < 1e-15);

    const auto zero = green_operator_radial(4.0, 1.0, [](double) { return 0.0; }, grid);
    for (double v : zero.values) CHECK(v == 0.0);

    // v'' + (m-1)/r v' = -f for f = 1 + s^2, v'' by central differences of v'
    const auto f = [](double s) { return 1.0 + s * s; };
    const double m = 4.5;
    const auto v = green_operator_radial(m, 1.0, f, grid);
    const double dr = grid[1] - grid[0];
    for (std::size_t i = 5; i + 5 < grid.size(); i += 10) {
        const double vpp = (v.derivatives[i + 1] - v.derivatives[i - 1]) / (2 * dr);
        CHECK(vpp + (m - 1) / grid[i] * v.derivatives[i] == doctest::Approx(-f(grid[i])).epsilon(1e-4));
    }
}
