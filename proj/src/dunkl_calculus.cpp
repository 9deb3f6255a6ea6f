#include "dunkl/dunkl_calculus.hpp"

#include <cmath>
#include <sstream>

#include "dunkl/error.hpp"

namespace dunkl {

double apply_dunkl_laplacian(const RootSystem& sys, const ScalarField& f, const Vec& x, double h) {
    if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "step size must be positive");
    const int d = sys.dimension();
    if (x.size() != d) fail(ErrorCode::InvalidArgument, "point dimension mismatch");

    const auto roots = sys.positive_roots();
    const auto k = sys.multiplicities();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (k[i] > 0.0 && std::abs(roots[i].dot(x)) < 10.0 * h) {
            std::ostringstream msg;
            msg << "|<alpha_" << i << ", x>| = " << std::abs(roots[i].dot(x)) << " < 10h = " << 10.0 * h;
            fail(ErrorCode::NearHyperplane, msg.str());
        }
    }

    const double f0 = f(x);
    double laplacian = 0.0;
    Vec grad(d);
    Vec probe = x;
    for (int i = 0; i < d; ++i) {
        probe[i] = x[i] + h;
        const double fp = f(probe);
        probe[i] = x[i] - h;
        const double fm = f(probe);
        probe[i] = x[i];
        laplacian += (fp - 2.0 * f0 + fm) / (h * h);
        grad[i] = (fp - fm) / (2.0 * h);
    }

    // Sum over the full system = twice the sum over positive roots (each
    // term is even in alpha).
    double extra = 0.0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (k[i] == 0.0) continue;
        const double ax = roots[i].dot(x);
        const double a2 = roots[i].squaredNorm();
        const double diff = f0 - f(reflect(roots[i], x));
        extra += 2.0 * k[i] * (grad.dot(roots[i]) / ax - 0.5 * a2 * diff / (ax * ax));
    }
    return laplacian + extra;
}

double radial_dunkl_laplacian(double m, double /*u*/, double u_prime, double u_second, double r) {
    if (r == 0.0) fail(ErrorCode::ZeroRadius, "use radial_dunkl_laplacian_at_origin at r = 0");
    if (r < 0.0) fail(ErrorCode::InvalidArgument, "radius must be nonnegative");
    return u_second + (m - 1.0) / r * u_prime;
}

double radial_dunkl_laplacian_at_origin(double m, double u_second) { return m * u_second; }

}  // namespace dunkl
