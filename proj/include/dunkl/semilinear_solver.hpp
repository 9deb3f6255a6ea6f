#pragma once

#include <cstddef>

#include "dunkl/phi.hpp"
#include "dunkl/radial_engine.hpp"

namespace dunkl {

/// Delta_k u = phi(u) on the centered ball B_R, u = c on the boundary.
struct DirichletProblem {
    double m;
    Phi phi;
    double r_ball;
    double c;

    void validate() const;
};

struct PicardControls {
    std::size_t points = 401;  // uniform grid on [0, r_ball]
    double tol = 1e-10;        // sup-norm of the last update
    int max_iter = 10000;
    double omega = 0.0;        // 0: min(1, 1 / (1 + phi'(c) r_ball^2 / (2m)))
};

struct PicardResult {
    RadialSolution solution;
    int iterations = 0;
    double omega = 0.0;
    double last_update = 0.0;
};

/// Damped fixed-point iteration u <- (1 - w) u + w (c - G_B phi(u)), started
/// from u = c and clamped below at 0. Throws NoConvergence after max_iter.
PicardResult picard_solve(const DirichletProblem& prob, const PicardControls& controls = {});

struct VerificationReport {
    double ode_residual = 0.0;         // sup |u'' + (m-1)/r u' - phi(u)|
    double fixedpoint_residual = 0.0;  // sup |u + G_B phi(u) - c|
    double boundary_error = 0.0;       // |u(r_ball) - c|
    bool bounds_ok = false;            // 0 <= u <= c and u nondecreasing
};

/// `bound_slack` absorbs rounding in the 0 <= u <= c and monotonicity checks.
VerificationReport verify_solution(const DirichletProblem& prob, const RadialSolution& u, double bound_slack = 1e-12);

/// u >= v - slack at every common grid point. The grids must coincide.
bool comparison_check(const RadialSolution& u, const RadialSolution& v, double slack = 1e-6);

/// sup |u - v| over a common grid.
double sup_distance(const RadialSolution& u, const RadialSolution& v);

}  // namespace dunkl
