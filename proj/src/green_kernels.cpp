#include "dunkl/green_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dunkl/error.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_m(double m) {
    if (!(m > 2.0)) {
        std::ostringstream msg;
        msg << "m = " << m << " must exceed 2";
        fail(ErrorCode::MTooSmall, msg.str());
    }
}

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0 ? a + kTwoPi : a;
}

// Sorted, deduplicated breakpoints of [lo, hi] including both ends.
std::vector<double> normalized_breaks(std::vector<double> pts, double lo, double hi) {
    pts.push_back(lo);
    pts.push_back(hi);
    std::erase_if(pts, [&](double p) { return p < lo || p > hi; });
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double p : pts) {
        if (out.empty() || p - out.back() > 1e-14) out.push_back(p);
    }
    if (out.back() < hi) out.back() = hi;
    return out;
}

double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breaks,
                        double tol) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        total += quad::endpoint_singular(f, breaks[i], breaks[i + 1], tol).value;
    }
    return total;
}

double sphere_integral_2d(const RootSystem& sys, double tol) {
    std::vector<double> breaks;
    const auto roots = sys.positive_roots();
    const auto k = sys.multiplicities();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (k[i] == 0.0) continue;
        const double base = std::atan2(roots[i][1], roots[i][0]);
        breaks.push_back(wrap_angle(base + 0.5 * std::numbers::pi));
        breaks.push_back(wrap_angle(base - 0.5 * std::numbers::pi));
    }
    auto f = [&](double theta) {
        Vec xi(2);
        xi << std::cos(theta), std::sin(theta);
        return sys.weight(xi);
    };
    return integrate_pieces(f, normalized_breaks(breaks, 0.0, kTwoPi), tol);
}

double sphere_integral_3d(const RootSystem& sys, double tol) {
    const auto roots = sys.positive_roots();
    const auto k = sys.multiplicities();

    std::vector<double> theta_breaks{0.5 * std::numbers::pi};
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (k[i] == 0.0) continue;
        const double rho = std::hypot(roots[i][0], roots[i][1]);
        const double t = std::atan2(std::abs(roots[i][2]), rho);
        theta_breaks.push_back(t);
        theta_breaks.push_back(std::numbers::pi - t);
    }

    auto inner = [&](double theta) {
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        std::vector<double> phi_breaks;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (k[i] == 0.0) continue;
            // <alpha, xi> = st * rho cos(phi - psi) + a3 ct
            const double rho = std::hypot(roots[i][0], roots[i][1]);
            if (rho * st == 0.0) continue;
            const double c = -roots[i][2] * ct / (rho * st);
            if (std::abs(c) > 1.0) continue;
            const double psi = std::atan2(roots[i][1], roots[i][0]);
            const double delta = std::acos(c);
            phi_breaks.push_back(wrap_angle(psi + delta));
            phi_breaks.push_back(wrap_angle(psi - delta));
        }
        auto g = [&](double phi) {
            Vec xi(3);
            xi << st * std::cos(phi), st * std::sin(phi), ct;
            return sys.weight(xi);
        };
        return st * integrate_pieces(g, normalized_breaks(phi_breaks, 0.0, kTwoPi), tol);
    };
    return integrate_pieces(inner, normalized_breaks(theta_breaks, 0.0, std::numbers::pi), tol);
}

double sphere_integral(const RootSystem& sys, double tol) {
    switch (sys.dimension()) {
        case 1: {
            Vec p(1), q(1);
            p << 1.0;
            q << -1.0;
            return sys.weight(p) + sys.weight(q);
        }
        case 2: return sphere_integral_2d(sys, tol);
        case 3: return sphere_integral_3d(sys, tol);
        default: {
            std::ostringstream msg;
            msg << "c_k quadrature supports d <= 3, got d = " << sys.dimension() << "; pass c_k explicitly";
            fail(ErrorCode::DimensionTooLarge, msg.str());
        }
    }
}

}  // namespace

KernelContext KernelContext::make(double m, double c_k) {
    require_m(m);
    if (!(c_k > 0.0) || !std::isfinite(c_k)) fail(ErrorCode::InvalidArgument, "c_k must be positive");
    return {m, c_k};
}

MehtaResult mehta_constant(const RootSystem& sys, const MehtaConfig& cfg) {
    if (sys.dimension() > 3) sphere_integral(sys, cfg.initial_tol);  // throws DimensionTooLarge

    const double m = sys.effective_dimension();
    const double radial = 0.5 * std::tgamma(0.5 * m);

    MehtaResult out;
    double tol = cfg.initial_tol;
    double previous = sphere_integral(sys, tol);
    out.sphere_integral = previous;
    out.last_change = 1.0;
    for (int level = 1; level <= cfg.max_refinements; ++level) {
        tol *= 1e-2;
        const double current = sphere_integral(sys, tol);
        out.last_change = std::abs(current - previous) / std::abs(current);
        out.sphere_integral = current;
        out.refinements = level;
        previous = current;
        if (out.last_change <= cfg.agreement) break;
    }
    out.c_k = 1.0 / (radial * out.sphere_integral);
    return out;
}

KernelContext kernel_context(const RootSystem& sys, const MehtaConfig& cfg) {
    return KernelContext::make(sys.effective_dimension(), mehta_constant(sys, cfg).c_k);
}

double sphere_weight_constant(const KernelContext& ctx) {
    return 2.0 / (ctx.c_k * std::tgamma(0.5 * ctx.m));
}

double green_potential_ball(double m, double r, double rho) {
    require_m(m);
    if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "ball radius must be positive");
    if (!(rho >= 0.0)) fail(ErrorCode::InvalidArgument, "|x| must be nonnegative");
    if (rho <= r) return (rho * rho / m + 0.5 * (r * r - rho * rho)) / (m - 2.0);
    return std::pow(r, m) * std::pow(rho, 2.0 - m) / (m * (m - 2.0));
}

double green_annulus_bound(double m, double t, double s) {
    require_m(m);
    if (!(t >= 0.0) || !(t < s)) fail(ErrorCode::BadRadii, "annulus radii must satisfy 0 <= t < s");
    return 2.0 * s * (s - t) / (m - 2.0);
}

double green_origin(const KernelContext& ctx, double rho) {
    if (rho == 0.0) fail(ErrorCode::OriginSingularity, "G^k(x, 0) is singular at x = 0");
    if (!(rho > 0.0)) fail(ErrorCode::InvalidArgument, "|x| must be positive");
    return 0.25 * ctx.c_k * std::tgamma(0.5 * ctx.m - 1.0) * std::pow(rho, 2.0 - ctx.m);
}

double green_pointwise_bound(const KernelContext& ctx, double rho_y, double rho_z) {
    const double gap = rho_y - rho_z;
    if (!(gap > 0.0)) fail(ErrorCode::BadRadii, "pointwise Green bound requires |y| > |z|");
    return ctx.c_k * std::tgamma(0.5 * ctx.m - 1.0) / (4.0 * std::pow(gap, ctx.m - 2.0));
}

namespace {

// c_k (4t)^{-m/2} exp(-s^2 / 4t); in log form for s != 0 so that tiny t gives 0, not inf * 0.
double gaussian_shell(const KernelContext& ctx, double t, double s) {
    if (s == 0.0) return ctx.c_k * std::pow(4.0 * t, -0.5 * ctx.m);
    return std::exp(std::log(ctx.c_k) - 0.5 * ctx.m * std::log(4.0 * t) - s * s / (4.0 * t));
}

}  // namespace

double heat_kernel_origin(const KernelContext& ctx, double t, double rho) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "time must be positive");
    return gaussian_shell(ctx, t, rho);
}

double heat_kernel_upper_bound(const KernelContext& ctx, double t, double rho_x, double rho_y) {
    if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "time must be positive");
    return gaussian_shell(ctx, t, rho_x - rho_y);
}

double expected_exit_time_ball(double m, double r, double rho) {
    require_m(m);
    if (!(r > 0.0) || !(rho >= 0.0)) fail(ErrorCode::InvalidArgument, "radii must be nonnegative");
    if (rho > r) fail(ErrorCode::OutsideBall, "starting point lies outside the ball");
    return (r * r - rho * rho) / (2.0 * m);
}

RadialProfile green_operator_radial(double m, double R, const std::function<double(double)>& f,
                                    std::span<const double> grid, double rel_tol) {
    require_m(m);
    if (!(R > 0.0)) fail(ErrorCode::InvalidArgument, "ball radius must be positive");
    if (grid.empty()) fail(ErrorCode::InvalidArgument, "empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0 || grid[i] > R * (1.0 + 1e-14)) fail(ErrorCode::InvalidArgument, "grid outside [0, R]");
        if (i > 0 && !(grid[i] > grid[i - 1])) fail(ErrorCode::InvalidArgument, "grid must be increasing");
    }

    // Nodes: 0, the grid, R.
    std::vector<double> nodes;
    nodes.reserve(grid.size() + 2);
    if (grid.front() > 0.0) nodes.push_back(0.0);
    for (double r : grid) nodes.push_back(std::min(r, R));
    if (nodes.back() < R) nodes.push_back(R);

    const std::size_t n = nodes.size();
    std::vector<double> A(n, 0.0), B(n, 0.0);
    std::vector<double> seg_b(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double lo = nodes[j];
        const double hi = nodes[j + 1];
        const double a_seg = quad::adaptive([&](double s) { return std::pow(s, m - 1.0) * f(s); }, lo, hi, rel_tol).value;
        seg_b[j] = quad::adaptive([&](double s) { return s * f(s); }, lo, hi, rel_tol).value;
        A[j + 1] = A[j] + a_seg;
    }
    for (std::size_t j = n - 1; j-- > 0;) B[j] = B[j + 1] + seg_b[j];

    const double boundary = std::pow(R, 2.0 - m) * A[n - 1];
    RadialProfile out;
    out.grid.assign(grid.begin(), grid.end());
    out.values.reserve(grid.size());
    out.derivatives.reserve(grid.size());
    const std::size_t offset = grid.front() > 0.0 ? 1 : 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::size_t j = i + offset;
        const double r = nodes[j];
        if (r == 0.0) {
            out.values.push_back((B[j] - boundary) / (m - 2.0));
            out.derivatives.push_back(0.0);
        } else {
            out.values.push_back((std::pow(r, 2.0 - m) * A[j] + B[j] - boundary) / (m - 2.0));
            out.derivatives.push_back(-std::pow(r, 1.0 - m) * A[j]);
        }
    }
    return out;
}

}  // namespace dunkl
