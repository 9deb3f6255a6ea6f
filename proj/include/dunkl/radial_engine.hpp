#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dunkl/phi.hpp"

namespace dunkl {

enum class BlowupStatus { Finite, InfiniteUpToHorizon };
std::string to_string(BlowupStatus s);

struct BlowupInfo {
    BlowupStatus status = BlowupStatus::Finite;
    double radius = 0.0;        // bracket_high when finite, the horizon otherwise
    double bracket_low = 0.0;
    double bracket_high = 0.0;
    double horizon = 0.0;
};

enum class StopReason { Horizon, Overflow, Stall };
std::string to_string(StopReason s);

/// Radial profile of u'' + (m - 1)/r u' = phi(u), u(0) = a, u'(0) = 0.
struct RadialSolution {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> derivatives;
    double seed = 0.0;
    std::optional<BlowupInfo> blowup;
    double stop_radius = 0.0;
    StopReason stop_reason = StopReason::Horizon;
};

struct IvpControls {
    double rtol = 1e-10;
    double atol = 1e-12;
    double u_max = 1e8;
    double start_fraction = 1e-4;  // series launch on [0, start_fraction * horizon]
    /// When > 0, steps are capped at max_relative_step * u / u' and at
    /// max_relative_step * horizon, so u changes by at most that fraction per
    /// recorded step.
    double max_relative_step = 0.0;
    /// Optional increasing radii in [0, horizon]; the integrator lands on each.
    /// Empty: every accepted step is recorded.
    std::vector<double> output_grid;
};

/// Adaptive Dormand-Prince 5(4) on (u, u') after a series start at the origin.
/// Stops at the horizon, when u exceeds u_max, or when the step size stalls.
/// Throws NonPhysicalSeed for a < 0.
RadialSolution integrate_radial_ivp(double m, const Phi& phi, double a, double horizon,
                                    const IvpControls& controls = {});

/// Piecewise cubic Hermite interpolant of a profile (uses values and derivatives).
class ProfileInterpolant {
public:
    explicit ProfileInterpolant(const RadialSolution& sol);
    double value(double r) const;
    double derivative(double r) const;

private:
    std::span<const double> grid_, values_, derivatives_;
};

enum class InnerLimit { FromZero, FromA };

/// int_a^inf dt / sqrt(int_{lo}^t phi), lo = 0 or a.
struct KOIntegral {
    bool divergent = false;
    double value = 0.0;            // +inf when divergent
    double cutoff = 0.0;           // T: finite part on [a, T], tail beyond
    double growth_exponent = 0.0;  // log_4 (Phi(4T) / Phi(T))
    double tail_value = 0.0;
    double tail_bound = 0.0;       // T / (sqrt(Phi(T)) (gamma/2 - 1)) for convergent tails
};

/// The tail is classified from the growth of Phi(t) = int_0^t phi on [T, 4T]:
/// exponent >= 2 + 1e-3 means convergent, <= 2 + 1e-9 divergent. T starts at
/// 4 max(a, 1) and doubles until the verdict agrees at T, 2T and 4T.
/// Throws UnclassifiableTail when no stable verdict is reached.
KOIntegral ko_integral(const Phi& phi, double a, InnerLimit inner);

enum class KOClass { Holds, Fails };
std::string to_string(KOClass c);

enum class EntireSolution { Exists, NotExists };
std::string to_string(EntireSolution e);

/// Exists iff int_1^inf dt / sqrt(int_0^t phi) diverges. m only needs to be valid.
EntireSolution classify_entire_solution(double m, const Phi& phi);

struct Sandwich {
    double lower = 0.0;      // L = int_a^inf dt / sqrt(int_a^t phi)
    double sqrt2_Ra = 0.0;
    double upper = 0.0;      // sqrt(m) L
    bool ok = false;
};

struct KOReport {
    double a = 0.0;
    KOIntegral integral_from_zero;
    KOIntegral integral_from_a;
    KOClass classification = KOClass::Holds;
    std::optional<Sandwich> sandwich;
};

KOReport ko_report(const Phi& phi, double a);

struct BlowupControls {
    IvpControls ivp;
    double horizon = 0.0;            // 0: 1.1 sqrt(m/2) L when KO fails, 10 when it holds
    double bracket_rel_width = 1e-6;
};

/// Integrates u_a towards its blow-up radius. Once u is large the radius
/// becomes the independent variable's unknown and integration continues in
/// ln u; the remaining distance to blow-up is bracketed by the energy bounds
///   int_U^inf du / sqrt(V^2 + 2 (Phi(u) - Phi(U)))
///     <= R - r <= int_U^inf du / sqrt(E(u))
/// at (r, U = u(r), V = u'(r)), which follow from phi(u)/m <= u'' <= phi(u).
/// E(u) is the larger of V^2 + (2/m)(Phi(u) - Phi(U)) and
/// W(u)^2 - 2 (m-1)/r (u - U) W(u), W(u)^2 = V^2 + 2 (Phi(u) - Phi(U)).
/// Integration stops once the bracket is narrower than bracket_rel_width * R.
/// When KO holds no integration can prove anything: the status is
/// InfiniteUpToHorizon and the profile covers [0, horizon] up to overflow.
/// Throws HorizonTooSmall if the horizon ends before blow-up is reached.
RadialSolution solve_to_blowup(double m, const Phi& phi, double a, const BlowupControls& controls = {});

BlowupInfo blowup_radius(double m, const Phi& phi, double a, const BlowupControls& controls = {});

struct SeedSearchStep {
    double low = 0.0;
    double high = 0.0;
    double radius_low = 0.0;   // R(low) >= target
    double radius_high = 0.0;  // R(high) <= target
};

struct SeedSearch {
    double seed = 0.0;
    double radius = 0.0;
    std::vector<SeedSearchStep> history;
};

/// Bisection on the seed, using that a -> R_a is continuous and decreasing.
/// The bracket starts at a = 1 and is widened by doubling / halving. Returns
/// the midpoint of the final bracket once |R - target| <= tol * target.
/// Throws KOHoldsNoBlowup when KO holds.
SeedSearch find_seed_for_radius(double m, const Phi& phi, double r_target, double tol = 1e-6,
                                const BlowupControls& controls = {});

/// Profile u_b with R_b = r_ball.
RadialSolution solve_blowup_problem(double m, const Phi& phi, double r_ball, const BlowupControls& controls = {});

std::vector<double> uniform_grid(double r_end, std::size_t points);

/// Radial solution of Delta_k u = phi(u) on B_R with u = c on the boundary,
/// by bisection on a in [0, c]. Output on a uniform grid of `points` radii.
RadialSolution solve_radial_dirichlet_shooting(double m, const Phi& phi, double r_ball, double c,
                                               double tol = 1e-12, std::size_t points = 401);

/// sup |u'' + (m - 1)/r u' - phi(u)| over interior grid points, with u''
/// from five-point Lagrange differentiation of the stored u'. `relative`
/// divides each residual by max(phi(u), 1). Points with r > r_limit are
/// skipped (r_limit <= 0: no limit).
double radial_ode_residual(double m, const Phi& phi, const RadialSolution& sol, bool relative,
                           double r_limit = 0.0);

/// L <= sqrt(2) R_a <= sqrt(m) L with slack 1e-3 L. Throws KOHoldsNoBlowup if KO holds.
KOReport sandwich_check(double m, const Phi& phi, double a, const BlowupControls& controls = {});

}  // namespace dunkl
