#include "doctest.h"

#include <cmath>

#include "dunkl/error.hpp"
#include "dunkl/phi.hpp"

using namespace dunkl;

TEST_CASE("parsing and evaluation") {
    const auto p = Phi::parse("power:1,2");
    CHECK(p(3.0) == doctest::Approx(9.0));
    CHECK(p(-1.0) == 0.0);
    CHECK(p.primitive(3.0) == doctest::Approx(9.0));
    CHECK(Phi::parse("linear:2")(1.5) == doctest::Approx(3.0));
    CHECK(Phi::parse("expm1:1")(1.0) == doctest::Approx(std::expm1(1.0)));
    CHECK(Phi::parse("poly:1,1")(2.0) == doctest::Approx(6.0));
    CHECK(Phi::parse(p.to_text())(1.7) == doctest::Approx(p(1.7)));
}

TEST_CASE("malformed input is rejected") {
    for (const char* bad : {"", "power", "power:1", "power:1,0.5", "linear:-1", "poly:0,0", "cubic:1", "power:1,x"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Phi::parse(bad), Error);
    }
}

TEST_CASE("primitive increment matches the difference of primitives") {
    for (const char* text : {"power:1,2", "power:2,1.5", "expm1:1", "poly:1,0,3", "linear:1"}) {
        const auto p = Phi::parse(text);
        CHECK(p.primitive_increment(1.3, 0.4) == doctest::Approx(p.primitive(1.7) - p.primitive(1.3)).epsilon(1e-12));
        CHECK(p.primitive_increment(1.3, 1e-9) == doctest::Approx(p(1.3) * 1e-9).epsilon(1e-8));
    }
}

TEST_CASE("log value does not overflow") {
    const auto e = Phi::parse("expm1:1");
    CHECK(e.log_value(1000.0) == doctest::Approx(1000.0));
    CHECK(Phi::parse("power:1,3").log_value(1e200) == doctest::Approx(600 * std::log(10.0)));
}
