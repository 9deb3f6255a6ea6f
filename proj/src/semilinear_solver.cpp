#include "dunkl/semilinear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dunkl/error.hpp"
#include "dunkl/green_kernels.hpp"

namespace dunkl {

namespace {

RadialProfile green_of_phi(const DirichletProblem& prob, const RadialSolution& u) {
    const ProfileInterpolant interp(u);
    return green_operator_radial(prob.m, prob.r_ball, [&](double s) { return prob.phi(interp.value(s)); }, u.grid);
}

}  // namespace

void DirichletProblem::validate() const {
    if (!(m > 2.0)) fail(ErrorCode::MTooSmall, "m must exceed 2");
    if (!(r_ball > 0.0)) fail(ErrorCode::InvalidArgument, "ball radius must be positive");
    if (!(c >= 0.0) || !std::isfinite(c)) fail(ErrorCode::InvalidArgument, "boundary value must be finite and >= 0");
}

PicardResult picard_solve(const DirichletProblem& prob, const PicardControls& controls) {
    prob.validate();
    if (controls.points < 2) fail(ErrorCode::InvalidArgument, "picard grid needs at least two points");

    PicardResult out;
    RadialSolution& u = out.solution;
    u.grid = uniform_grid(prob.r_ball, controls.points);
    u.values.assign(controls.points, prob.c);
    u.derivatives.assign(controls.points, 0.0);
    u.stop_radius = prob.r_ball;

    const double lip = prob.phi.derivative(prob.c);
    const double green_norm = prob.r_ball * prob.r_ball / (2.0 * prob.m);
    out.omega = controls.omega > 0.0 ? controls.omega : std::min(1.0, 1.0 / (1.0 + lip * green_norm));
    const double w = out.omega;

    for (int iter = 1; iter <= controls.max_iter; ++iter) {
        const RadialProfile g = green_of_phi(prob, u);
        double update = 0.0;
        for (std::size_t i = 0; i < controls.points; ++i) {
            const double target = prob.c - g.values[i];
            const double next = std::max(0.0, (1.0 - w) * u.values[i] + w * target);
            update = std::max(update, std::abs(next - u.values[i]));
            u.values[i] = next;
            u.derivatives[i] = (1.0 - w) * u.derivatives[i] - w * g.derivatives[i];
        }
        out.iterations = iter;
        out.last_update = update;
        if (update < controls.tol) {
            u.seed = u.values.front();
            return out;
        }
    }
    std::ostringstream msg;
    msg << "Picard iteration did not reach " << controls.tol << " in " << controls.max_iter
        << " iterations (last update " << out.last_update << ")";
    fail(ErrorCode::NoConvergence, msg.str());
}

VerificationReport verify_solution(const DirichletProblem& prob, const RadialSolution& u, double bound_slack) {
    prob.validate();
    if (u.grid.size() < 2) fail(ErrorCode::InvalidArgument, "solution has fewer than two grid points");
    if (std::abs(u.grid.back() - prob.r_ball) > 1e-12 * prob.r_ball) {
        fail(ErrorCode::InvalidArgument, "solution grid does not end at the ball radius");
    }
    VerificationReport rep;
    rep.ode_residual = radial_ode_residual(prob.m, prob.phi, u, false);

    const RadialProfile g = green_of_phi(prob, u);
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
        rep.fixedpoint_residual = std::max(rep.fixedpoint_residual, std::abs(u.values[i] + g.values[i] - prob.c));
    }
    rep.boundary_error = std::abs(u.values.back() - prob.c);

    rep.bounds_ok = true;
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
        if (u.values[i] < -bound_slack || u.values[i] > prob.c + bound_slack) rep.bounds_ok = false;
        if (i > 0 && u.values[i] < u.values[i - 1] - bound_slack) rep.bounds_ok = false;
    }
    return rep;
}

namespace {

void require_common_grid(const RadialSolution& u, const RadialSolution& v) {
    if (u.grid.size() != v.grid.size()) fail(ErrorCode::InvalidArgument, "solutions live on different grids");
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
        if (std::abs(u.grid[i] - v.grid[i]) > 1e-12 * std::max(1.0, std::abs(u.grid[i]))) {
            fail(ErrorCode::InvalidArgument, "solutions live on different grids");
        }
    }
}

}  // namespace

bool comparison_check(const RadialSolution& u, const RadialSolution& v, double slack) {
    require_common_grid(u, v);
    for (std::size_t i = 0; i < u.grid.size(); ++i)
        if (u.values[i] < v.values[i] - slack) return false;
    return true;
}

double sup_distance(const RadialSolution& u, const RadialSolution& v) {
    require_common_grid(u, v);
    double d = 0.0;
    for (std::size_t i = 0; i < u.grid.size(); ++i) d = std::max(d, std::abs(u.values[i] - v.values[i]));
    return d;
}

}  // namespace dunkl
