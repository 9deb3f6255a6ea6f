#include "dunkl/radial_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "dunkl/dunkl_calculus.hpp"
#include "dunkl/error.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBlowupRelativeStep = 0.01;

void require_m(double m) {
    if (!(m > 2.0)) {
        std::ostringstream msg;
        msg << "m = " << m << " must exceed 2";
        fail(ErrorCode::MTooSmall, msg.str());
    }
}

struct SeriesStart {
    double u;
    double du;
};

// u = a + phi(a) r^2 / 2m + phi'(a) phi(a) r^4 / (8 m (m + 2))
SeriesStart series(double m, const Phi& phi, double a, double r) {
    const double f = phi(a);
    const double fp = phi.derivative(a);
    const double r2 = r * r;
    return {a + f * r2 / (2.0 * m) + fp * f * r2 * r2 / (8.0 * m * (m + 2.0)),
            f * r / m + fp * f * r * r2 / (2.0 * m * (m + 2.0))};
}

using StopPredicate = std::function<bool(double r, double u, double du)>;

RadialSolution integrate_core(double m, const Phi& phi, double a, double horizon, const IvpControls& c,
                              const StopPredicate& extra_stop) {
    require_m(m);
    if (a < 0.0) {
        std::ostringstream msg;
        msg << "seed a = " << a << " is negative";
        fail(ErrorCode::NonPhysicalSeed, msg.str());
    }
    if (!(horizon > 0.0)) fail(ErrorCode::InvalidArgument, "horizon must be positive");
    if (!(c.rtol > 0.0) || !(c.atol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerances must be positive");
    const auto& out = c.output_grid;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < 0.0 || out[i] > horizon * (1.0 + 1e-14)) fail(ErrorCode::InvalidArgument, "output grid outside [0, horizon]");
        if (i > 0 && !(out[i] > out[i - 1])) fail(ErrorCode::InvalidArgument, "output grid must be increasing");
    }

    RadialSolution sol;
    sol.seed = a;
    auto record = [&](double r, double u, double du) {
        sol.grid.push_back(r);
        sol.values.push_back(u);
        sol.derivatives.push_back(du);
    };

    const double r_start = std::min(c.start_fraction, 1.0) * horizon;
    std::size_t next = 0;
    if (out.empty()) {
        record(0.0, a, 0.0);
    } else {
        for (; next < out.size() && out[next] <= r_start; ++next) {
            const auto s = series(m, phi, a, out[next]);
            record(out[next], s.u, s.du);
        }
    }

    const auto s0 = series(m, phi, a, r_start);
    State y{s0.u, s0.du};
    double r = r_start;
    if (out.empty()) record(r, y[0], y[1]);

    auto rhs = [&](const State& x, State& dxdr, double rr) {
        dxdr[0] = x[1];
        dxdr[1] = phi(x[0]) - (m - 1.0) * x[1] / rr;
    };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(c.atol, c.rtol);

    const double r_end = out.empty() ? horizon : std::min(out.back(), horizon);
    double dt_next = r_start;
    sol.stop_reason = StopReason::Horizon;
    while (r < r_end) {
        const double target = (!out.empty() && next < out.size()) ? std::min(out[next], r_end) : r_end;
        double cap = dt_next;
        if (c.max_relative_step > 0.0) {
            cap = std::min(cap, c.max_relative_step * horizon);
            if (y[1] > 0.0) cap = std::min(cap, c.max_relative_step * y[0] / y[1]);
        }
        double dt = std::min(cap, target - r);
        const bool clamped = dt < dt_next;
        const double r_before = r;
        if (stepper.try_step(rhs, y, r, dt) == odeint::fail) {
            dt_next = dt;
            if (dt < 1e-15 * std::max(r, 1.0)) {
                sol.stop_reason = StopReason::Stall;
                break;
            }
            continue;
        }
        if (!clamped || dt < dt_next) dt_next = dt;
        if (target - r <= 1e-13 * std::max(target, 1.0) && r_before < target) r = target;

        const bool finite = std::isfinite(y[0]) && std::isfinite(y[1]);
        if (out.empty()) {
            if (finite) record(r, y[0], y[1]);
        } else if (next < out.size() && r == out[next]) {
            if (finite) record(r, y[0], y[1]);
            ++next;
        }
        if (!finite || y[0] > c.u_max) {
            sol.stop_reason = StopReason::Overflow;
            break;
        }
        if (extra_stop && extra_stop(r, y[0], y[1])) {
            sol.stop_reason = StopReason::Overflow;
            break;
        }
    }
    sol.stop_radius = r;
    return sol;
}

double default_horizon(double m, const Phi& phi, double a, KOClass cls) {
    if (cls == KOClass::Holds) return 10.0;
    const double L = ko_integral(phi, a, InnerLimit::FromA).value;
    return 1.1 * std::sqrt(0.5 * m) * L;
}

struct Bracket {
    double low;
    double high;
};

// Distance-to-blow-up bracket from the state (r0, U, V).
Bracket energy_bracket(double m, const Phi& phi, double r0, double U, double V) {
    const double inv_v2 = 1.0 / (V * V);
    const double loss = 2.0 * (m - 1.0) / r0 * U / V;
    auto q_of = [&](double y) { return phi.primitive_increment(U, U * y) * inv_v2; };
    auto lower_integrand = [&](double y) {
        const double q = q_of(y);
        if (!std::isfinite(q)) return 0.0;
        return U / (V * std::sqrt(1.0 + 2.0 * q));
    };
    auto upper_integrand = [&](double y) {
        const double q = q_of(y);
        if (!std::isfinite(q)) return 0.0;
        const double e = 1.0 + 2.0 * q;
        // u'^2 >= V^2 + 2 dPhi - 2 (m-1)/r0 (u - U) sqrt(V^2 + 2 dPhi), and >= V^2 + (2/m) dPhi.
        const double lb = std::max(1.0 + 2.0 * q / m, e - loss * y * std::sqrt(e));
        return U / (V * std::sqrt(lb));
    };
    const double lo = quad::half_line(lower_integrand, 0.0, 1e-11).value;
    const double hi = quad::half_line(upper_integrand, 0.0, 1e-11).value;
    return {r0 + lo, r0 + hi};
}

double growth_exponent(const Phi& phi, double T) {
    const double lo = phi.primitive(T);
    const double hi = phi.primitive(4.0 * T);
    if (!std::isfinite(hi)) return kInf;
    return std::log(hi / lo) / std::log(4.0);
}

enum class Verdict { Convergent, Divergent, Undecided };

Verdict verdict_at(const Phi& phi, double T) {
    const double g = growth_exponent(phi, T);
    if (g >= 2.0 + 1e-3) return Verdict::Convergent;
    if (g <= 2.0 + 1e-9) return Verdict::Divergent;
    return Verdict::Undecided;
}

}  // namespace

std::string to_string(BlowupStatus s) {
    return s == BlowupStatus::Finite ? "finite" : "infinite_up_to_horizon";
}

std::string to_string(StopReason s) {
    switch (s) {
        case StopReason::Horizon: return "horizon";
        case StopReason::Overflow: return "overflow";
        case StopReason::Stall: return "stall";
    }
    return "horizon";
}

std::string to_string(KOClass c) { return c == KOClass::Holds ? "KO_holds" : "KO_fails"; }

std::string to_string(EntireSolution e) { return e == EntireSolution::Exists ? "exists" : "not_exists"; }

RadialSolution integrate_radial_ivp(double m, const Phi& phi, double a, double horizon, const IvpControls& controls) {
    return integrate_core(m, phi, a, horizon, controls, nullptr);
}

ProfileInterpolant::ProfileInterpolant(const RadialSolution& sol)
    : grid_(sol.grid), values_(sol.values), derivatives_(sol.derivatives) {
    if (grid_.size() < 2) fail(ErrorCode::InvalidArgument, "profile needs at least two points");
}

namespace {

std::size_t segment(std::span<const double> grid, double r) {
    auto it = std::upper_bound(grid.begin(), grid.end(), r);
    std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
    return std::min(i, grid.size() - 2);
}

}  // namespace

double ProfileInterpolant::value(double r) const {
    const std::size_t i = segment(grid_, r);
    const double h = grid_[i + 1] - grid_[i];
    const double t = (r - grid_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * values_[i] + (t3 - 2 * t2 + t) * h * derivatives_[i] +
           (-2 * t3 + 3 * t2) * values_[i + 1] + (t3 - t2) * h * derivatives_[i + 1];
}

double ProfileInterpolant::derivative(double r) const {
    const std::size_t i = segment(grid_, r);
    const double h = grid_[i + 1] - grid_[i];
    const double t = (r - grid_[i]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * values_[i] + (-6 * t2 + 6 * t) * values_[i + 1]) / h +
           (3 * t2 - 4 * t + 1) * derivatives_[i] + (3 * t2 - 2 * t) * derivatives_[i + 1];
}

KOIntegral ko_integral(const Phi& phi, double a, InnerLimit inner) {
    if (!(a > 0.0)) fail(ErrorCode::InvalidArgument, "ko_integral requires a > 0");

    KOIntegral out;
    double T0 = 4.0 * std::max(a, 1.0);
    bool decided = false;
    Verdict v = Verdict::Undecided;
    for (; T0 < 1e100; T0 *= 2.0) {
        v = verdict_at(phi, T0);
        if (v != Verdict::Undecided && verdict_at(phi, 2.0 * T0) == v && verdict_at(phi, 4.0 * T0) == v) {
            decided = true;
            break;
        }
    }
    if (!decided) {
        fail(ErrorCode::UnclassifiableTail, "growth of int_0^t phi did not settle on either side of t^2");
    }
    const double T = 4.0 * T0;
    out.cutoff = T;
    out.growth_exponent = growth_exponent(phi, T);
    if (v == Verdict::Divergent) {
        out.divergent = true;
        out.value = kInf;
        out.tail_value = kInf;
        out.tail_bound = kInf;
        return out;
    }

    auto denom = [&](double t) {
        return inner == InnerLimit::FromA ? phi.primitive_increment(a, t - a) : phi.primitive(t);
    };

    double finite_part = 0.0;
    double lo = a;
    if (inner == InnerLimit::FromA) {
        // t = a + s^2 removes the inverse square root at t = a.
        const double width = std::min(1.0, T - a);
        auto g = [&](double s) {
            if (s == 0.0) return 2.0 / std::sqrt(phi(a));
            return 2.0 * s / std::sqrt(phi.primitive_increment(a, s * s));
        };
        finite_part += quad::adaptive(g, 0.0, std::sqrt(width), 1e-13).value;
        lo = a + width;
    }
    auto f = [&](double t) { return 1.0 / std::sqrt(denom(t)); };
    while (lo < T) {
        const double hi = std::min(T, 2.0 * lo);
        finite_part += quad::adaptive(f, lo, hi, 1e-13).value;
        lo = hi;
    }

    // t = T / x maps [T, inf) onto (0, 1].
    auto tail = [&](double x) {
        const double t = T / x;
        const double d = denom(t);
        const double val = T / (x * x * std::sqrt(d));
        return std::isfinite(val) ? val : 0.0;
    };
    out.tail_value = quad::endpoint_singular(tail, 0.0, 1.0, 1e-13).value;
    out.tail_bound = T / (std::sqrt(denom(T)) * (0.5 * out.growth_exponent - 1.0));
    if (!std::isfinite(out.growth_exponent)) out.tail_bound = 0.0;
    out.value = finite_part + out.tail_value;
    return out;
}

EntireSolution classify_entire_solution(double m, const Phi& phi) {
    require_m(m);
    return ko_integral(phi, 1.0, InnerLimit::FromZero).divergent ? EntireSolution::Exists : EntireSolution::NotExists;
}

KOReport ko_report(const Phi& phi, double a) {
    KOReport rep;
    rep.a = a;
    rep.integral_from_zero = ko_integral(phi, a, InnerLimit::FromZero);
    rep.integral_from_a = ko_integral(phi, a, InnerLimit::FromA);
    rep.classification = rep.integral_from_zero.divergent ? KOClass::Holds : KOClass::Fails;
    return rep;
}

RadialSolution solve_to_blowup(double m, const Phi& phi, double a, const BlowupControls& controls) {
    require_m(m);
    if (!(a > 0.0)) fail(ErrorCode::NonPhysicalSeed, "blow-up radius requires a > 0");
    const KOClass cls = ko_integral(phi, 1.0, InnerLimit::FromZero).divergent ? KOClass::Holds : KOClass::Fails;
    const double horizon = controls.horizon > 0.0 ? controls.horizon : default_horizon(m, phi, a, cls);

    if (cls == KOClass::Holds) {
        RadialSolution sol = integrate_core(m, phi, a, horizon, controls.ivp, nullptr);
        sol.blowup = BlowupInfo{BlowupStatus::InfiniteUpToHorizon, horizon, horizon, horizon, horizon};
        return sol;
    }

    IvpControls ivp = controls.ivp;
    ivp.output_grid.clear();
    if (ivp.max_relative_step <= 0.0) ivp.max_relative_step = kBlowupRelativeStep;
    auto near_blowup = [](double r, double u, double du) { return du > 0.0 && u / du <= 1e-3 * r; };
    RadialSolution sol = integrate_core(m, phi, a, horizon, ivp, near_blowup);
    if (sol.stop_reason == StopReason::Horizon) {
        std::ostringstream msg;
        msg << "no blow-up before horizon " << horizon << " (u = " << sol.values.back() << ")";
        fail(ErrorCode::HorizonTooSmall, msg.str());
    }

    // Continue in t = ln u with state (r, ln u').
    double r0 = sol.grid.back();
    double U = sol.values.back();
    double V = sol.derivatives.back();
    if (!(U > 0.0) || !(V > 0.0)) fail(ErrorCode::NoConvergence, "blow-up phase switch reached a non-increasing state");

    State y{r0, std::log(V)};
    double t = std::log(U);
    auto rhs = [&](const State& x, State& dx, double tt) {
        const double ratio = std::exp(tt - x[1]);  // u / u'
        dx[0] = ratio;
        dx[1] = std::exp(phi.log_value(std::exp(tt)) + tt - 2.0 * x[1]) - (m - 1.0) * ratio / x[0];
    };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-14, 1e-12);
    double dt = 1e-2;
    Bracket br = energy_bracket(m, phi, r0, U, V);
    double last_check = t;
    const double t_max = std::log(1e300);
    while (br.high - br.low > controls.bracket_rel_width * br.high) {
        if (t > t_max) fail(ErrorCode::NoConvergence, "blow-up bracket did not tighten before u overflowed");
        // Short steps in ln u keep the recorded profile finely resolved in r.
        dt = std::min(dt, ivp.max_relative_step);
        if (stepper.try_step(rhs, y, t, dt) == odeint::fail) {
            if (dt < 1e-14) fail(ErrorCode::NoConvergence, "step size underflow in blow-up phase");
            continue;
        }
        if (!std::isfinite(y[0]) || !std::isfinite(y[1])) fail(ErrorCode::NoConvergence, "non-finite state in blow-up phase");
        if (y[0] > horizon) {
            std::ostringstream msg;
            msg << "blow-up radius exceeds horizon " << horizon;
            fail(ErrorCode::HorizonTooSmall, msg.str());
        }
        sol.grid.push_back(y[0]);
        sol.values.push_back(std::exp(t));
        sol.derivatives.push_back(std::exp(y[1]));
        if (t - last_check >= 0.25) {
            br = energy_bracket(m, phi, y[0], std::exp(t), std::exp(y[1]));
            last_check = t;
        }
    }
    // Guard against coinciding radii at the very end of the phase-2 record.
    while (sol.grid.size() >= 2 && !(sol.grid.back() > sol.grid[sol.grid.size() - 2])) {
        sol.grid.pop_back();
        sol.values.pop_back();
        sol.derivatives.pop_back();
    }
    if (br.high > horizon) fail(ErrorCode::HorizonTooSmall, "blow-up bracket extends beyond the horizon");
    sol.stop_radius = sol.grid.back();
    sol.stop_reason = StopReason::Overflow;
    sol.blowup = BlowupInfo{BlowupStatus::Finite, br.high, br.low, br.high, horizon};
    return sol;
}

BlowupInfo blowup_radius(double m, const Phi& phi, double a, const BlowupControls& controls) {
    return *solve_to_blowup(m, phi, a, controls).blowup;
}

SeedSearch find_seed_for_radius(double m, const Phi& phi, double r_target, double tol, const BlowupControls& controls) {
    require_m(m);
    if (!(r_target > 0.0)) fail(ErrorCode::InvalidArgument, "target radius must be positive");
    if (classify_entire_solution(m, phi) == EntireSolution::Exists) {
        fail(ErrorCode::KOHoldsNoBlowup, "KO holds: every radial solution is entire, no finite blow-up radius");
    }
    BlowupControls c = controls;
    c.horizon = 0.0;
    auto R = [&](double a) { return blowup_radius(m, phi, a, c).radius; };

    SeedSearch out;
    double lo = 1.0, hi = 1.0;
    double R_lo = R(1.0), R_hi = R_lo;
    // R is decreasing in a: small seeds give large radii.
    while (R_lo < r_target) {
        hi = lo;
        R_hi = R_lo;
        lo *= 0.5;
        R_lo = R(lo);
        if (lo < 1e-300) fail(ErrorCode::NoConvergence, "seed bracket underflow");
    }
    while (R_hi > r_target) {
        lo = hi;
        R_lo = R_hi;
        hi *= 2.0;
        R_hi = R(hi);
        if (hi > 1e300) fail(ErrorCode::NoConvergence, "seed bracket overflow");
    }
    out.history.push_back({lo, hi, R_lo, R_hi});
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        const double R_mid = R(mid);
        if (std::abs(R_mid - r_target) <= tol * r_target || hi - lo <= 1e-15 * hi) {
            out.seed = mid;
            out.radius = R_mid;
            return out;
        }
        if (R_mid >= r_target) {
            lo = mid;
            R_lo = R_mid;
        } else {
            hi = mid;
            R_hi = R_mid;
        }
        out.history.push_back({lo, hi, R_lo, R_hi});
    }
    fail(ErrorCode::NoConvergence, "seed bisection did not converge");
}

RadialSolution solve_blowup_problem(double m, const Phi& phi, double r_ball, const BlowupControls& controls) {
    const SeedSearch s = find_seed_for_radius(m, phi, r_ball, 1e-6, controls);
    BlowupControls c = controls;
    c.horizon = 0.0;
    return solve_to_blowup(m, phi, s.seed, c);
}

std::vector<double> uniform_grid(double r_end, std::size_t points) {
    if (points < 2) fail(ErrorCode::InvalidArgument, "grid needs at least two points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) g[i] = r_end * static_cast<double>(i) / static_cast<double>(points - 1);
    g.back() = r_end;
    return g;
}

RadialSolution solve_radial_dirichlet_shooting(double m, const Phi& phi, double r_ball, double c, double tol,
                                               std::size_t points) {
    require_m(m);
    if (!(r_ball > 0.0)) fail(ErrorCode::InvalidArgument, "ball radius must be positive");
    if (!(c >= 0.0)) fail(ErrorCode::InvalidArgument, "boundary value must be nonnegative");

    IvpControls ivp;
    ivp.output_grid = uniform_grid(r_ball, points);
    auto shoot = [&](double a) { return integrate_radial_ivp(m, phi, a, r_ball, ivp); };
    auto reached = [&](const RadialSolution& s) {
        return s.grid.size() == points ? s.values.back() : kInf;
    };

    if (c == 0.0) return shoot(0.0);

    double lo = 0.0, hi = c;
    RadialSolution best;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        best = shoot(mid);
        const double g = reached(best) - c;
        if (std::abs(g) <= tol || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * c) break;
        if (g > 0.0) hi = mid;
        else lo = mid;
    }
    return best;
}

namespace {

// d/dx of the Lagrange interpolant through x[lo..hi] at x[i], applied to y.
double lagrange_derivative(std::span<const double> x, std::span<const double> y, std::size_t lo, std::size_t hi,
                           std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
        double w;
        if (j == i) {
            w = 0.0;
            for (std::size_t k = lo; k <= hi; ++k)
                if (k != i) w += 1.0 / (x[i] - x[k]);
        } else {
            double num = 1.0, den = 1.0;
            for (std::size_t k = lo; k <= hi; ++k) {
                if (k != j) den *= x[j] - x[k];
                if (k != i && k != j) num *= x[i] - x[k];
            }
            w = num / den;
        }
        acc += w * y[j];
    }
    return acc;
}

}  // namespace

double radial_ode_residual(double m, const Phi& phi, const RadialSolution& sol, bool relative, double r_limit) {
    const std::size_t n = sol.grid.size();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double r = sol.grid[i];
        if (r_limit > 0.0 && r > r_limit) break;
        if (r == 0.0) continue;
        const std::size_t lo = n < 5 ? 0 : std::min(i >= 2 ? i - 2 : 0, n - 5);
        const std::size_t hi = std::min(n - 1, lo + 4);
        const double u2 = lagrange_derivative(sol.grid, sol.derivatives, lo, hi, i);
        const double f = phi(sol.values[i]);
        double res = std::abs(radial_dunkl_laplacian(m, sol.values[i], sol.derivatives[i], u2, r) - f);
        if (relative) res /= std::max(f, 1.0);
        worst = std::max(worst, res);
    }
    return worst;
}

KOReport sandwich_check(double m, const Phi& phi, double a, const BlowupControls& controls) {
    require_m(m);
    KOReport rep = ko_report(phi, a);
    if (rep.classification == KOClass::Holds) {
        fail(ErrorCode::KOHoldsNoBlowup, "KO holds: R_a is infinite, no sandwich to check");
    }
    const double L = rep.integral_from_a.value;
    const double R = blowup_radius(m, phi, a, controls).radius;
    Sandwich s;
    s.lower = L;
    s.sqrt2_Ra = std::numbers::sqrt2 * R;
    s.upper = std::sqrt(m) * L;
    const double slack = 1e-3 * L;
    s.ok = s.lower - slack <= s.sqrt2_Ra && s.sqrt2_Ra <= s.upper + slack;
    rep.sandwich = s;
    return rep;
}

}  // namespace dunkl
