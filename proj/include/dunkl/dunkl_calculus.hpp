#pragma once

#include <functional>

#include "dunkl/linalg.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

enum class Smoothness { C2, RadialC2 };

/// A deterministic function R^d -> R to which the Dunkl Laplacian is applied.
struct ScalarField {
    std::function<double(const Vec&)> evaluator;
    Smoothness smoothness_hint = Smoothness::C2;

    double operator()(const Vec& x) const { return evaluator(x); }
};

/// Delta_k f(x) with second-order central differences (step h) for the
/// Laplacian and gradient; the reflection difference terms are evaluated
/// exactly. Throws NearHyperplane if |<alpha, x>| < 10 h for some root with
/// k(alpha) > 0.
double apply_dunkl_laplacian(const RootSystem& sys, const ScalarField& f, const Vec& x, double h);

/// u'' + (m - 1)/r u' for a radial profile. Throws ZeroRadius at r = 0.
double radial_dunkl_laplacian(double m, double u, double u_prime, double u_second, double r);

/// Limit of the radial operator at the origin, where u'(0) = 0: m u''(0).
double radial_dunkl_laplacian_at_origin(double m, double u_second);

}  // namespace dunkl
