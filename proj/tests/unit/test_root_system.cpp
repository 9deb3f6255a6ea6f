#include "doctest.h"

#include <cmath>
#include <random>

#include "dunkl/error.hpp"
#include "dunkl/io.hpp"
#include "dunkl/root_system.hpp"

using namespace dunkl;

namespace {

Vec v2(double a, double b) {
    Vec x(2);
    x << a, b;
    return x;
}

RootSystem custom_11(double k) {
    RootSystemParams p;
    p.dimension = 2;
    p.k = {k};
    p.roots = {v2(1, 1)};
    return RootSystem::build(RootFamily::Custom, p);
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("a1 product in d=2 with k=0.75") {
    const auto sys = io::parse_system("a1xa1:0.75");
    CHECK(sys.full_system().size() == 4);
    CHECK(sys.effective_dimension() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(enumerate_group(sys).size() == 4);
}

TEST_CASE("dihedral group orders") {
    CHECK(enumerate_group(io::parse_system("dihedral:3:1")).size() == 6);
    CHECK(enumerate_group(io::parse_system("dihedral:4:0.5,1")).size() == 8);
    CHECK(enumerate_group(io::parse_system("b2:0.5,1")).size() == 8);
}

TEST_CASE("custom root (1,1) is accepted with m = 4") {
    CHECK(custom_11(1.0).effective_dimension() == doctest::Approx(4.0));
}

TEST_CASE("d=1 effective dimension") {
    CHECK(io::parse_system("a1:1").effective_dimension() == doctest::Approx(3.0));
}

TEST_CASE("build errors") {
    RootSystemParams p;
    p.dimension = 2;
    p.k = {1.0};
    p.roots = {v2(1, 0)};
    CHECK(code_of([&] { RootSystem::build(RootFamily::Custom, p); }) == ErrorCode::UnnormalizedRoot);

    p.roots = {v2(1, 1), v2(std::sqrt(2.0), 0)};
    CHECK(code_of([&] { RootSystem::build(RootFamily::Custom, p); }) == ErrorCode::NotARootSystem);

    CHECK(code_of([] { io::parse_system("a1xa1:0"); }) == ErrorCode::MTooSmall);
    CHECK(code_of([] { io::parse_system("dihedral:3:1,0.5"); }) == ErrorCode::NonInvariantMultiplicity);
    CHECK(code_of([] { custom_11(0.0); }) == ErrorCode::MTooSmall);
}

TEST_CASE("a non-crystallographic input that does not close is capped") {
    // dihedral of order 7 is fine, but a small cap must trip
    CHECK(code_of([] { enumerate_group(io::parse_system("dihedral:7:1"), 10); }) == ErrorCode::GroupTooLarge);
}

TEST_CASE("reflect examples") {
    const Vec a = v2(std::sqrt(2.0), 0);
    CHECK((reflect(a, v2(3, 4)) - v2(-3, 4)).norm() < 1e-15);
    CHECK((reflect(v2(1, 1), v2(1, -1)) - v2(1, -1)).norm() < 1e-15);
    CHECK((reflect(v2(1, 1), v2(1, 1)) - v2(-1, -1)).norm() < 1e-15);
}

TEST_CASE("reflection is an involution and its matrix is orthogonal") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    const Vec a = v2(1, 1);
    const Mat s = reflection_matrix(a);
    CHECK((s * s.transpose() - Mat::Identity(2, 2)).norm() < 1e-14);
    for (int i = 0; i < 20; ++i) {
        const Vec x = v2(n(rng), n(rng));
        CHECK((reflect(a, reflect(a, x)) - x).norm() < 1e-14);
        CHECK((s * x - reflect(a, x)).norm() < 1e-14);
    }
}

TEST_CASE("weight examples") {
    Vec one(1);
    one << 1.0;
    CHECK(io::parse_system("a1:1").weight(one) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(io::parse_system("a1xa1:0.75").weight(v2(0.0, 1.3)) == 0.0);
    const auto sys = io::parse_system("dihedral:3:1");
    const Vec& a = sys.positive_roots()[1];
    CHECK(sys.weight(v2(-a[1], a[0])) < 1e-15);
}

TEST_CASE("weight is homogeneous of degree m - d") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> n;
    for (const char* text : {"a1xa1:0.75", "dihedral:4:0.5,1", "b2:0.25,1.5"}) {
        const auto sys = io::parse_system(text);
        for (int i = 0; i < 10; ++i) {
            const Vec x = v2(n(rng), n(rng));
            const double want = std::pow(2.0, sys.effective_dimension() - 2) * sys.weight(x);
            CHECK(sys.weight(2.0 * x) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("group elements are orthogonal, identity first, word lengths grow") {
    const auto group = enumerate_group(io::parse_system("dihedral:6:1,0.5"));
    CHECK(group.size() == 12);
    CHECK((group.front().matrix - Mat::Identity(2, 2)).norm() == 0.0);
    CHECK(group.front().word_length == 0);
    for (const auto& g : group) CHECK((g.matrix * g.matrix.transpose() - Mat::Identity(2, 2)).norm() < 1e-10);
}

TEST_CASE("positive roots have a positive first nonzero coordinate and squared length 2") {
    for (const char* text : {"a1xa1xa1:0.5", "dihedral:5:1", "b2:1,1"}) {
        const auto sys = io::parse_system(text);
        for (const auto& a : sys.positive_roots()) {
            CHECK(a.squaredNorm() == doctest::Approx(2.0).epsilon(1e-14));
            int i = 0;
            while (a[i] == 0.0) ++i;
            CHECK(a[i] > 0.0);
        }
    }
}
