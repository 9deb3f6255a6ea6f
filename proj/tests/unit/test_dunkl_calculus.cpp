#include "doctest.h"

#include <cmath>

#include "dunkl/dunkl_calculus.hpp"
#include "dunkl/error.hpp"
#include "dunkl/io.hpp"

using namespace dunkl;

namespace {

Vec v2(double a, double b) {
    Vec x(2);
    x << a, b;
    return x;
}

}  // namespace

TEST_CASE("linear fields are annihilated") {
    const auto sys = io::parse_system("a1xa1:0.75");
    const ScalarField f{[](const Vec& x) { return 3.0 * x[0] - 2.0 * x[1] + 1.0; }};
    CHECK(std::abs(apply_dunkl_laplacian(sys, f, v2(0.4, 0.7), 1e-3)) < 1e-7);
    const ScalarField c{[](const Vec&) { return 5.0; }};
    CHECK(std::abs(apply_dunkl_laplacian(sys, c, v2(0.4, 0.7), 1e-3)) < 1e-9);
}

TEST_CASE("squared norm gives 2m") {
    const ScalarField f{[](const Vec& x) { return x.squaredNorm(); }, Smoothness::RadialC2};
    const auto a = io::parse_system("a1xa1:0.75");
    CHECK(apply_dunkl_laplacian(a, f, v2(0.4, 0.7), 1e-3) == doctest::Approx(10.0).epsilon(1e-8));
    const auto b = io::parse_system("b2:0.5,1");
    CHECK(apply_dunkl_laplacian(b, f, v2(0.9, 0.2), 1e-3) ==
          doctest::Approx(2.0 * b.effective_dimension()).epsilon(1e-8));
}

TEST_CASE("radial operator") {
    CHECK(radial_dunkl_laplacian(5.0, 1.0, 2.0, 2.0, 1.0) == doctest::Approx(10.0));
    // r^{2-m} with m = 4 at r = 2
    const double m = 4.0, r = 2.0;
    const double u = std::pow(r, 2 - m), up = (2 - m) * std::pow(r, 1 - m), upp = (2 - m) * (1 - m) * std::pow(r, -m);
    CHECK(std::abs(radial_dunkl_laplacian(m, u, up, upp, r)) < 1e-15);
    CHECK(radial_dunkl_laplacian_at_origin(5.0, 2.0) == doctest::Approx(10.0));
}

TEST_CASE("radial and full operators agree on r^2 away from walls") {
    const auto sys = io::parse_system("dihedral:4:0.5,1");
    const ScalarField f{[](const Vec& x) { return x.squaredNorm() * x.squaredNorm(); }, Smoothness::RadialC2};
    const Vec x = v2(0.5, 0.9);
    const double r = x.norm();
    const double want = radial_dunkl_laplacian(sys.effective_dimension(), r * r * r * r, 4 * r * r * r, 12 * r * r, r);
    CHECK(apply_dunkl_laplacian(sys, f, x, 1e-4) == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("operator errors") {
    const auto sys = io::parse_system("a1xa1:0.75");
    const ScalarField f{[](const Vec& x) { return x.squaredNorm(); }};
    try {
        apply_dunkl_laplacian(sys, f, v2(0.005, 0.5), 1e-3);
        FAIL("expected NearHyperplane");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NearHyperplane);
    }
    try {
        radial_dunkl_laplacian(4.0, 1.0, 0.0, 1.0, 0.0);
        FAIL("expected ZeroRadius");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroRadius);
    }
}
