#pragma once

#include <functional>

namespace dunkl::quad {

using Integrand = std::function<double(double)>;

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (31 points) on a finite interval; smooth integrands.
/// Relative tolerances below 1e-12 are raised to 1e-12.
Estimate adaptive(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// Tanh-sinh on a finite interval; tolerates algebraic endpoint singularities.
/// The integrand is never evaluated exactly at a or b.
Estimate endpoint_singular(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// Integral over [a, a + 1] plus the tail [a + 1, inf) mapped onto (0, 1]
/// with t = a + 1/x. Non-finite integrand values in the tail are treated as 0
/// (overflowing denominators).
Estimate half_line(const Integrand& f, double a, double rel_tol = 1e-12);

}  // namespace dunkl::quad
