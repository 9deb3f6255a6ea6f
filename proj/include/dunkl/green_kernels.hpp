#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dunkl/root_system.hpp"

namespace dunkl {

/// Effective dimension m and the Gaussian normalization constant c_k.
struct KernelContext {
    double m = 0.0;
    double c_k = 0.0;

    /// Validates m > 2 and c_k > 0.
    static KernelContext make(double m, double c_k);
};

struct MehtaConfig {
    double initial_tol = 1e-8;     // first sphere-quadrature tolerance
    double agreement = 1e-7;       // successive refinements must agree to this (relative)
    int max_refinements = 6;       // each refinement divides the tolerance by 100
};

struct MehtaResult {
    double c_k = 0.0;
    double sphere_integral = 0.0;  // int_{S^{d-1}} w_k dsigma
    double last_change = 0.0;      // relative change between the last two refinements
    int refinements = 0;
};

/// c_k = (int e^{-|y|^2} w_k(y) dy)^{-1}.
///
/// Homogeneity of w_k (degree m - d) factors the integral into
/// Gamma(m/2)/2 times the weighted sphere area, which is integrated with
/// breakpoints on the reflection hyperplanes. Only d <= 3 is supported
/// (DimensionTooLarge otherwise).
MehtaResult mehta_constant(const RootSystem& sys, const MehtaConfig& cfg = {});

KernelContext kernel_context(const RootSystem& sys, const MehtaConfig& cfg = {});

/// int_{S^{d-1}} w_k dsigma recovered from c_k: 2 / (c_k Gamma(m/2)).
double sphere_weight_constant(const KernelContext& ctx);

/// G^k 1_{B_r}(x) as a function of rho = |x|.
double green_potential_ball(double m, double r, double rho);

/// 2 s (s - t) / (m - 2), an upper bound for G^k 1_{A_{t,s}} on the annulus.
double green_annulus_bound(double m, double t, double s);

/// G^k(x, 0) = (c_k / 4) Gamma(m/2 - 1) |x|^{2-m}.
double green_origin(const KernelContext& ctx, double rho);

/// Pointwise bound c_k Gamma(m/2 - 1) / (4 (|y| - |z|)^{m-2}) for G^k(y, z),
/// |y| > |z|. Coincides with green_origin when |z| = 0.
double green_pointwise_bound(const KernelContext& ctx, double rho_y, double rho_z);

/// p_t^k(x, 0) = c_k (4t)^{-m/2} exp(-|x|^2 / 4t).
double heat_kernel_origin(const KernelContext& ctx, double t, double rho);

/// c_k (4t)^{-m/2} exp(-(|x| - |y|)^2 / 4t).
double heat_kernel_upper_bound(const KernelContext& ctx, double t, double rho_x, double rho_y);

/// E^x[tau_{B_r}] = (r^2 - |x|^2) / (2m).
double expected_exit_time_ball(double m, double r, double rho);

/// Radial profile on a grid: values and first derivatives.
struct RadialProfile {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> derivatives;
};

/// v = G^k_B f for a radial f on the ball of radius R:
///   v(r) = int_r^R t^{1-m} int_0^t s^{m-1} f(s) ds dt,
/// the radial solution of Delta_k v = -f with v(R) = 0, v'(0) = 0.
/// Evaluated in the equivalent kernel form
///   v(r) = [r^{2-m} A(r) + B(r) - R^{2-m} A(R)] / (m - 2),
///   A(r) = int_0^r s^{m-1} f,  B(r) = int_r^R s f,
/// with cumulative adaptive quadrature between consecutive grid points.
/// `grid` must be increasing within [0, R]. Derivatives are v'(r) = -r^{1-m} A(r).
RadialProfile green_operator_radial(double m, double R, const std::function<double(double)>& f,
                                    std::span<const double> grid, double rel_tol = 1e-13);

}  // namespace dunkl
