#include "doctest.h"

#include <cmath>

#include "dunkl/error.hpp"
#include "dunkl/green_kernels.hpp"
#include "dunkl/io.hpp"
#include "dunkl/mc_simulator.hpp"

using namespace dunkl;

namespace {

Vec v2(double a, double b) {
    Vec x(2);
    x << a, b;
    return x;
}

SimConfig small(std::size_t paths, std::uint64_t seed) {
    SimConfig c;
    c.n_paths = paths;
    c.rng_seed = seed;
    c.h = 1e-4;
    c.threads = 1;
    return c;
}

}  // namespace

TEST_CASE("domain parsing and geometry") {
    const auto ball = DomainSpec::parse("centered_ball:1", 2);
    CHECK(ball.kind() == DomainSpec::Kind::CenteredBall);
    CHECK(ball.contains(v2(0.5, 0.5)));
    CHECK_FALSE(ball.contains(v2(1.0, 0.0)));
    const auto half = DomainSpec::parse("half_ball:1,2,0", 2);
    CHECK(half.normal().norm() == doctest::Approx(1.0));
    CHECK_FALSE(half.contains(v2(-0.1, 0.2)));
    CHECK(half.distance_to_closure(v2(-0.1, 0.2)) == doctest::Approx(0.1));
    CHECK_THROWS_AS(DomainSpec::parse("offset_ball:1,0", 2), Error);
}

TEST_CASE("a start on the boundary exits immediately") {
    const auto sys = io::parse_system("a1xa1:0.75");
    const auto out = simulate_exit(sys, v2(0.6, 0.8), DomainSpec::centered_ball(2, 1.0), small(5, 1));
    for (const auto& s : out) CHECK(s.exit_time == 0.0);
}

TEST_CASE("centered-ball exits land near the sphere and are reproducible") {
    const auto sys = io::parse_system("a1xa1:0.75");
    const auto D = DomainSpec::centered_ball(2, 1.0);
    const auto a = simulate_exit(sys, v2(0.3, 0.2), D, small(200, 11));
    auto cfg = small(200, 11);
    cfg.threads = 3;
    const auto b = simulate_exit(sys, v2(0.3, 0.2), D, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK_FALSE(a[i].capped);
        CHECK(a[i].exit_point.norm() >= 1.0);
        CHECK(a[i].exit_point.norm() - 1.0 <= 6.0 * std::sqrt(2.0 * cfg.h));
        CHECK(a[i].exit_time == b[i].exit_time);
        CHECK(a[i].exit_point == b[i].exit_point);
    }
    CHECK(summarize(a).radius_violations == 0);
}

TEST_CASE("jump rate is linear in the multiplicity") {
    const Vec x = v2(0.3, -0.7);
    const DunklProcess p1(io::parse_system("a1xa1:0.5"), LevyRateConvention::Generator, 1e-8);
    const DunklProcess p2(io::parse_system("a1xa1:1"), LevyRateConvention::Generator, 1e-8);
    for (std::size_t i = 0; i < 2; ++i) CHECK(p2.jump_rate(i, x) == doctest::Approx(2.0 * p1.jump_rate(i, x)));
    // |alpha|^2 = 2 doubles the generator rate relative to the printed one
    const DunklProcess q(io::parse_system("a1xa1:0.5"), LevyRateConvention::PrintedLvk, 1e-8);
    CHECK(p1.jump_rate(0, x) == doctest::Approx(2.0 * q.jump_rate(0, x)));
}

TEST_CASE("harmonic support membership") {
    const auto sys = io::parse_system("a1xa1:0.75");
    const auto group = enumerate_group(sys);
    const auto ball = DomainSpec::centered_ball(2, 1.0);
    CHECK(gamma_D(group, ball, v2(0.6, 0.8), 1e-9));
    CHECK_FALSE(gamma_D(group, ball, v2(0.1, 0.2), 1e-9));
    const auto off = DomainSpec::offset_ball(v2(0.6, 0.3), 0.25);
    CHECK(gamma_D(group, off, v2(-0.35, 0.3), 1e-9));
    CHECK_FALSE(gamma_D(group, off, v2(0.0, 0.0), 1e-3));
}

TEST_CASE("exact launch from the origin") {
    const auto sys = io::parse_system("a1xa1:0.75");  // m = 5
    const DunklProcess proc(sys, LevyRateConvention::Generator, 1e-8);
    const std::size_t n = 20000;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        PathRng rng(3, i);
        const double s = proc.sample_from_origin(1.0, rng).squaredNorm() / 4.0;
        sum += s;
        sumsq += s * s;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    CHECK(std::abs(mean - 2.5) <= 4.0 * se);

    for (std::size_t i = 0; i < 20; ++i) {
        PathRng r1(9, i), r4(9, i);
        const Vec a = proc.sample_from_origin(1.0, r1);
        const Vec b = proc.sample_from_origin(4.0, r4);
        CHECK((b - 2.0 * a).norm() <= 1e-12 * b.norm());
    }
}

TEST_CASE("ks helpers") {
    CHECK(ks_critical_1pct(10000) == doctest::Approx(1.628 / 100.0).epsilon(1e-2));
    CHECK(ks_gamma({0.5, 1.0, 2.0, 3.0}, 2.0) > 0.0);
}

TEST_CASE("short exit-time estimate is in the right place") {
    const auto sys = io::parse_system("a1xa1:0.75");
    const auto s = summarize(simulate_exit(sys, v2(0.3, 0.2), DomainSpec::centered_ball(2, 1.0), small(1000, 5)));
    const double want = expected_exit_time_ball(5.0, 1.0, v2(0.3, 0.2).norm());
    CHECK(std::abs(s.mean_time - want) <= 5.0 * s.stderr_time + 0.01 * want);
}
