#include "dunkl/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dunkl/error.hpp"

namespace dunkl::quad {

namespace bq = boost::math::quadrature;

// Below this the Kronrod-minus-Gauss estimate is dominated by rounding and
// the recursion never terminates early.
constexpr double kMinRelTol = 1e-12;

Estimate adaptive(const Integrand& f, double a, double b, double rel_tol) {
    if (a == b) return {};
    Estimate out;
    out.value = bq::gauss_kronrod<double, 31>::integrate(f, a, b, 15, std::max(rel_tol, kMinRelTol), &out.error);
    return out;
}

Estimate endpoint_singular(const Integrand& f, double a, double b, double rel_tol) {
    if (a == b) return {};
    // One integrator per thread: construction precomputes abscissas.
    thread_local bq::tanh_sinh<double> integrator(15);
    Estimate out;
    double l1 = 0.0;
    std::size_t levels = 0;
    out.value = integrator.integrate(f, a, b, rel_tol, &out.error, &l1, &levels);
    return out;
}

Estimate half_line(const Integrand& f, double a, double rel_tol) {
    const Estimate head = adaptive(f, a, a + 1.0, rel_tol);
    auto mapped = [&](double x) {
        const double t = a + 1.0 / x;
        const double v = f(t) / (x * x);
        return std::isfinite(v) ? v : 0.0;
    };
    const Estimate tail = endpoint_singular(mapped, 0.0, 1.0, rel_tol);
    return {head.value + tail.value, head.error + tail.error};
}

}  // namespace dunkl::quad
