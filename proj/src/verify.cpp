#include "dunkl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "dunkl/dunkl_calculus.hpp"
#include "dunkl/error.hpp"
#include "dunkl/green_kernels.hpp"
#include "dunkl/io.hpp"
#include "dunkl/mc_simulator.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/radial_engine.hpp"
#include "dunkl/root_system.hpp"
#include "dunkl/semilinear_solver.hpp"

namespace dunkl::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Accumulates a verdict and a short human-readable detail line.
class Verdict {
public:
    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed_ = false;
            if (failures_++ < 3) note("FAIL " + what);
        }
    }
    template <class T>
    void note(const std::string& key, T value) {
        std::ostringstream s;
        s << std::setprecision(4) << key << "=" << value;
        note(s.str());
    }
    void note(const std::string& text) {
        if (!detail_.empty()) detail_ += "; ";
        detail_ += text;
    }
    CheckResult result() const { return {"", passed_, detail_, 0.0}; }
    bool passed() const { return passed_; }

private:
    bool passed_ = true;
    int failures_ = 0;
    std::string detail_;
};

std::string str(double v) {
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
}

std::vector<RootSystem> test_systems() {
    std::vector<RootSystem> out;
    for (const char* text : {"a1:1", "a1xa1:0.75", "a1xa1xa1:0.5", "dihedral:3:1", "dihedral:4:0.5,1", "dihedral:6:1,0.5",
                             "b2:0.5,1"})
        out.push_back(io::parse_system(text));
    RootSystemParams p;
    p.dimension = 2;
    p.k = {1.0};
    Vec r(2);
    r << 1.0, 1.0;
    p.roots = {r};
    out.push_back(RootSystem::build(RootFamily::Custom, p));
    return out;
}

Vec random_point(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> n;
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = n(rng);
    return x;
}

// A random point whose distance to every reflecting hyperplane is at least `gap`.
Vec point_off_walls(const RootSystem& sys, std::mt19937_64& rng, double radius, double gap) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Vec x = random_point(rng, sys.dimension());
        x *= radius / x.norm();
        bool ok = true;
        for (const auto& a : sys.positive_roots())
            if (std::abs(a.dot(x)) / a.norm() < gap) ok = false;
        if (ok) return x;
    }
    fail(ErrorCode::InvalidArgument, "no sample point keeps the requested distance from the walls");
}

std::vector<Phi> phi_family() {
    return {Phi::linear(1.0),          Phi::power(1.0, 1.5), Phi::power(1.0, 2.0),
            Phi::power(1.0, 3.0),      Phi::exp_minus_one(1.0), Phi::poly({1.0, 1.0})};
}

bool ko_fails(const Phi& phi) {
    return classify_entire_solution(3.0, phi) == EntireSolution::NotExists;
}

// Profile of u_a on [0, blow-up) when KO fails, on [0, 5] otherwise.
RadialSolution profile(double m, const Phi& phi, double a) {
    if (ko_fails(phi)) return solve_to_blowup(m, phi, a);
    return integrate_radial_ivp(m, phi, a, 5.0);
}

// Dense uniform profile on [0, r_end] where r_end stays well inside the existence interval.
RadialSolution dense_profile(double m, const Phi& phi, double a, std::size_t points, double& r_end) {
    r_end = ko_fails(phi) ? 0.8 * blowup_radius(m, phi, a).bracket_low : 3.0;
    IvpControls c;
    c.output_grid = uniform_grid(r_end, points);
    return integrate_radial_ivp(m, phi, a, r_end, c);
}

struct RadialCase {
    Phi phi;
    double a;
    double m;
};

std::vector<RadialCase> radial_cases() {
    return {{Phi::power(1.0, 2.0), 1.0, 4.0},     {Phi::power(1.0, 3.0), 0.5, 3.0}, {Phi::exp_minus_one(1.0), 1.0, 5.0},
            {Phi::linear(1.0), 1.0, 3.0},         {Phi::poly({1.0, 1.0}), 2.0, 3.5}, {Phi::power(1.0, 1.5), 2.0, 6.0},
            {Phi::power(2.0, 2.0), 0.1, 2.5}};
}

ExitSummary run_exit(const std::string& system, const Vec& x0, const DomainSpec& D, const McOptions& o,
                     std::size_t paths, std::uint64_t salt) {
    SimConfig cfg;
    cfg.h = o.h;
    cfg.n_paths = paths;
    cfg.rng_seed = o.seed + salt;
    cfg.threads = o.threads;
    return summarize(simulate_exit(io::parse_system(system), x0, D, cfg));
}

Vec generic_start(int d, double radius) {
    Vec x(d);
    if (d == 1) {
        x[0] = radius;
    } else {
        x.setZero();
        x[0] = std::cos(0.3);
        x[1] = std::sin(0.3);
        x *= radius;
    }
    return x;
}

// ---------------------------------------------------------------- root_system

CheckResult reflection_isometry(const McOptions&) {
    Verdict v;
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (const auto& sys : test_systems()) {
        for (const auto& alpha : sys.full_system()) {
            for (int i = 0; i < 50; ++i) {
                const Vec x = random_point(rng, sys.dimension());
                worst = std::max(worst, std::abs(reflect(alpha, x).norm() - x.norm()) / std::max(1.0, x.norm()));
            }
        }
    }
    v.require(worst <= 1e-12, "| |sigma x| - |x| | = " + str(worst));
    v.note("worst", worst);
    return v.result();
}

CheckResult weight_invariance(const McOptions&) {
    Verdict v;
    std::mt19937_64 rng(12);
    double worst = 0.0;
    for (const auto& sys : test_systems()) {
        const auto group = enumerate_group(sys);
        for (int i = 0; i < 20; ++i) {
            const Vec x = random_point(rng, sys.dimension());
            const double w = sys.weight(x);
            for (const auto& g : group) {
                const double wg = sys.weight(g.matrix * x);
                worst = std::max(worst, std::abs(wg - w) / std::max(1.0, std::abs(w)));
            }
        }
    }
    v.require(worst <= 1e-10, "w_k(g x) != w_k(x), deviation " + str(worst));
    v.note("worst", worst);
    return v.result();
}

CheckResult full_system_symmetric(const McOptions&) {
    Verdict v;
    for (const auto& sys : test_systems()) {
        const auto full = sys.full_system();
        v.require(full.size() % 2 == 0, "odd cardinality");
        for (const auto& a : full) {
            const bool found = std::any_of(full.begin(), full.end(), [&](const Vec& b) { return b == -a; });
            v.require(found, "-alpha missing from R");
        }
    }
    v.note("systems", test_systems().size());
    return v.result();
}

CheckResult group_closure(const McOptions&) {
    Verdict v;
    std::size_t total = 0;
    for (const auto& sys : test_systems()) {
        const auto group = enumerate_group(sys);
        total += group.size();
        auto member = [&](const Mat& m) {
            return std::any_of(group.begin(), group.end(), [&](const GroupElement& g) { return (g.matrix - m).norm() < 1e-8; });
        };
        for (const auto& g : group) {
            v.require(member(g.matrix.transpose()), "inverse missing");
            for (const auto& h : group) v.require(member(g.matrix * h.matrix), "product missing");
        }
    }
    v.note("elements", total);
    return v.result();
}

// -------------------------------------------------------------- dunkl_calculus

struct RadialTest {
    const char* name;
    std::function<double(double)> u, du, d2u;
};

std::vector<RadialTest> radial_tests() {
    return {{"r^2", [](double r) { return r * r; }, [](double r) { return 2 * r; }, [](double) { return 2.0; }},
            {"r^4", [](double r) { return std::pow(r, 4); }, [](double r) { return 4 * std::pow(r, 3); },
             [](double r) { return 12 * r * r; }},
            {"exp(-r^2)", [](double r) { return std::exp(-r * r); }, [](double r) { return -2 * r * std::exp(-r * r); },
             [](double r) { return (4 * r * r - 2) * std::exp(-r * r); }}};
}

CheckResult radial_agreement(const McOptions&) {
    Verdict v;
    std::mt19937_64 rng(21);
    double worst_ratio = 0.0;
    for (const auto& sys : test_systems()) {
        const double m = sys.effective_dimension();
        for (const auto& t : radial_tests()) {
            const ScalarField f{[&](const Vec& x) { return t.u(x.norm()); }, Smoothness::RadialC2};
            for (double h : {1e-2, 1e-3}) {
                for (int i = 0; i < 5; ++i) {
                    const Vec x = point_off_walls(sys, rng, 1.0, 0.15);
                    const double r = x.norm();
                    const double got = apply_dunkl_laplacian(sys, f, x, h);
                    const double want = radial_dunkl_laplacian(m, t.u(r), t.du(r), t.d2u(r), r);
                    const double ratio = std::abs(got - want) / (50.0 * h * h);
                    worst_ratio = std::max(worst_ratio, ratio);
                    v.require(ratio <= 1.0, std::string(t.name) + " error " + str(std::abs(got - want)) + " at h=" + str(h));
                }
            }
        }
    }
    v.note("worst |error| / 50h^2", worst_ratio);
    return v.result();
}

// Exact Delta_k of exp(<a, x>) from the operator's definition.
double exact_dunkl_exp(const RootSystem& sys, const Vec& a, const Vec& x) {
    const auto f = [&](const Vec& y) { return std::exp(a.dot(y)); };
    double s = a.squaredNorm() * f(x);
    const auto full = sys.full_system();
    const auto ks = sys.full_multiplicities();
    for (std::size_t i = 0; i < full.size(); ++i) {
        const Vec& al = full[i];
        const double p = al.dot(x);
        s += ks[i] * (a.dot(al) * f(x) / p - 0.5 * al.squaredNorm() * (f(x) - f(reflect(al, x))) / (p * p));
    }
    return s;
}

// Observed orders log2(e(h)/e(h/2)) on exp(<a, x>) for h = 0.02, 0.01, 0.005.
std::vector<double> observed_orders(const RootSystem& sys, const Vec& a, const Vec& x) {
    const ScalarField f{[&](const Vec& y) { return std::exp(a.dot(y)); }, Smoothness::C2};
    const double exact = exact_dunkl_exp(sys, a, x);
    std::vector<double> errors;
    for (double h : {0.02, 0.01, 0.005}) errors.push_back(std::abs(apply_dunkl_laplacian(sys, f, x, h) - exact));
    return {std::log2(errors[0] / errors[1]), std::log2(errors[1] / errors[2])};
}

CheckResult convergence_order(const McOptions&) {
    Verdict v;
    std::mt19937_64 rng(22);
    double lo = kInf, hi = 0.0;
    for (const auto& sys : test_systems()) {
        Vec a = random_point(rng, sys.dimension());
        a *= 1.2 / a.norm();
        const Vec x = point_off_walls(sys, rng, 1.2, 0.25);
        for (double q : observed_orders(sys, a, x)) {
            const double factor = std::exp2(q);
            lo = std::min(lo, factor);
            hi = std::max(hi, factor);
            v.require(factor >= 3.5 && factor <= 4.5, "error reduction factor " + str(factor));
        }
    }
    v.note("factor range [" + str(lo) + ", " + str(hi) + "]");
    return v.result();
}

CheckResult green_profile_harmonic(const McOptions&) {
    Verdict v;
    std::mt19937_64 rng(23);
    double worst = 0.0;
    for (const char* text : {"a1:1", "a1xa1:0.75", "dihedral:3:1", "b2:0.5,1"}) {
        const RootSystem sys = io::parse_system(text);
        const KernelContext ctx = kernel_context(sys);
        const ScalarField g{[&](const Vec& x) { return green_origin(ctx, x.norm()); }, Smoothness::RadialC2};
        for (double r : {0.5, 0.75, 1.0, 1.5, 2.0}) {
            const Vec x = point_off_walls(sys, rng, r, 0.1 * r);
            const double lap = apply_dunkl_laplacian(sys, g, x, 2e-5);
            worst = std::max(worst, std::abs(lap));
            v.require(std::abs(lap) <= 1e-4, std::string(text) + " Delta_k G = " + str(lap) + " at r=" + str(r));
        }
    }
    v.note("worst |Delta_k G(.,0)|", worst);
    return v.result();
}

// --------------------------------------------------------------- green_kernels

CheckResult branch_continuity(const McOptions&) {
    Verdict v;
    double worst = 0.0;
    for (double m : {2.5, 3.0, 4.0, 5.0, 10.0}) {
        for (double r : {0.5, 1.0, 3.0}) {
            const double in = green_potential_ball(m, r, std::nextafter(r, 0.0));
            const double out = green_potential_ball(m, r, std::nextafter(r, kInf));
            worst = std::max(worst, std::abs(in - out));
        }
    }
    v.require(worst <= 1e-12, "branch jump " + str(worst));
    v.note("worst jump", worst);
    return v.result();
}

CheckResult potential_monotone_decay(const McOptions&) {
    Verdict v;
    for (double m : {2.5, 3.0, 4.0, 5.0, 10.0}) {
        double prev = kInf;
        for (int i = 0; i <= 400; ++i) {
            const double rho = 0.01 * i;
            const double g = green_potential_ball(m, 1.0, rho);
            v.require(g <= prev, "increase at rho=" + str(rho) + " m=" + str(m));
            prev = g;
        }
        const double far = green_potential_ball(m, 1.0, 1e40);
        v.require(far < 1e-6 * green_potential_ball(m, 1.0, 0.0), "no decay at infinity, m=" + str(m));
    }
    return v.result();
}

CheckResult pointwise_bound_origin(const McOptions&) {
    Verdict v;
    double worst = 0.0;
    for (const char* text : {"a1:1", "a1xa1:0.75", "dihedral:4:0.5,1"}) {
        const KernelContext ctx = kernel_context(io::parse_system(text));
        for (double rho : {0.1, 0.5, 1.0, 2.0, 7.0}) {
            const double a = green_pointwise_bound(ctx, rho, 0.0);
            const double b = green_origin(ctx, rho);
            worst = std::max(worst, std::abs(a - b) / b);
        }
    }
    v.require(worst <= 1e-15, "pointwise bound at z=0 differs from G(.,0) by " + str(worst));
    v.note("worst relative difference", worst);
    return v.result();
}

CheckResult green_one_is_exit_time(const McOptions&) {
    Verdict v;
    double worst = 0.0;
    for (double m : {2.5, 3.0, 5.0, 8.0}) {
        for (double R : {0.5, 1.0, 2.0}) {
            const auto grid = uniform_grid(R, 101);
            const auto prof = green_operator_radial(m, R, [](double) { return 1.0; }, grid);
            for (std::size_t i = 0; i < grid.size(); ++i)
                worst = std::max(worst, std::abs(prof.values[i] - expected_exit_time_ball(m, R, grid[i])));
        }
    }
    v.require(worst <= 1e-8, "G_B 1 vs exit time " + str(worst));
    v.note("worst", worst);
    return v.result();
}

CheckResult green_linearity(const McOptions&) {
    Verdict v;
    const auto f = [](double s) { return std::exp(-s) + s * s; };
    const auto g = [](double s) { return std::cos(3 * s) + 2.0; };
    const double a = 1.7, b = -0.6;
    double worst = 0.0;
    for (double m : {3.0, 4.5}) {
        const auto grid = uniform_grid(1.5, 61);
        const auto vf = green_operator_radial(m, 1.5, f, grid);
        const auto vg = green_operator_radial(m, 1.5, g, grid);
        const auto vs = green_operator_radial(m, 1.5, [&](double s) { return a * f(s) + b * g(s); }, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(vs.values[i] - a * vf.values[i] - b * vg.values[i]));
    }
    v.require(worst <= 1e-10, "linearity defect " + str(worst));
    v.note("worst", worst);
    return v.result();
}

CheckResult heat_kernel_time_integral(const McOptions&) {
    Verdict v;
    double worst = 0.0;
    for (const char* text : {"a1:1", "a1xa1:0.75"}) {
        const KernelContext ctx = kernel_context(io::parse_system(text));
        for (double rho : {0.5, 1.0, 2.0}) {
            const double integral =
                quad::endpoint_singular([&](double t) { return heat_kernel_origin(ctx, t, rho); }, 0.0, 1.0).value +
                quad::half_line([&](double t) { return heat_kernel_origin(ctx, t, rho); }, 1.0).value;
            const double g = green_origin(ctx, rho);
            worst = std::max(worst, std::abs(integral - g) / g);
        }
    }
    v.require(worst <= 1e-6, "int p_t dt vs G(.,0) " + str(worst));
    v.note("worst relative", worst);
    return v.result();
}

// --------------------------------------------------------------- radial_engine

CheckResult seed_monotonicity(const McOptions&) {
    Verdict v;
    struct Case {
        Phi phi;
        double m;
    };
    for (const auto& c : {Case{Phi::power(1.0, 2.0), 4.0}, Case{Phi::exp_minus_one(1.0), 3.0}, Case{Phi::linear(1.0), 5.0}}) {
        const std::vector<double> seeds{0.0, 0.5, 1.0, 2.0};
        std::vector<double> radii;
        for (double a : seeds) radii.push_back(ko_fails(c.phi) && a > 0.0 ? blowup_radius(c.m, c.phi, a).radius : kInf);
        for (std::size_t i = 1; i < radii.size(); ++i)
            v.require(radii[i] <= radii[i - 1], c.phi.to_text() + ": R_a not decreasing");
        const double r_end = std::isfinite(radii.back()) ? 0.95 * radii.back() : 3.0;
        IvpControls ctl;
        ctl.output_grid = uniform_grid(r_end, 201);
        std::vector<RadialSolution> sols;
        for (double a : seeds) sols.push_back(integrate_radial_ivp(c.m, c.phi, a, r_end, ctl));
        for (std::size_t i = 1; i < sols.size(); ++i) {
            v.require(sols[i].grid.size() == 201 && sols[i - 1].grid.size() == 201, "profile stopped early");
            for (std::size_t j = 0; j < std::min(sols[i].grid.size(), sols[i - 1].grid.size()); ++j)
                v.require(sols[i - 1].values[j] <= sols[i].values[j], c.phi.to_text() + ": u_a > u_b");
        }
    }
    return v.result();
}

CheckResult apriori_bound(const McOptions&) {
    Verdict v;
    double worst = kInf;
    for (const auto& c : radial_cases()) {
        const auto sol = profile(c.m, c.phi, c.a);
        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            const double r = sol.grid[i];
            const double bound = c.a + c.phi(c.a) * r * r / (2.0 * c.m);
            const double margin = (sol.values[i] - bound) / std::max(1.0, bound);
            worst = std::min(worst, margin);
            v.require(margin >= -1e-12, c.phi.to_text() + " below a-priori bound at r=" + str(r));
        }
    }
    v.note("smallest relative margin", worst);
    return v.result();
}

CheckResult derivative_sign_bound(const McOptions&) {
    Verdict v;
    for (const auto& c : radial_cases()) {
        const auto sol = profile(c.m, c.phi, c.a);
        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            const double r = sol.grid[i];
            const double du = sol.derivatives[i];
            const double cap = r / c.m * c.phi(sol.values[i]);
            v.require(du >= 0.0, c.phi.to_text() + " u' < 0 at r=" + str(r));
            v.require(du <= cap * (1.0 + 1e-8) + 1e-300, c.phi.to_text() + " u' > r phi(u)/m at r=" + str(r));
        }
    }
    return v.result();
}

CheckResult second_derivative_bracket(const McOptions&) {
    Verdict v;
    double worst = 0.0;
    for (const auto& c : radial_cases()) {
        double r_end = 0.0;
        const auto sol = dense_profile(c.m, c.phi, c.a, 2001, r_end);
        const double dr = sol.grid[1] - sol.grid[0];
        for (std::size_t i = 1; i + 1 < sol.grid.size(); ++i) {
            const double u2 = (sol.derivatives[i + 1] - sol.derivatives[i - 1]) / (2.0 * dr);
            const double p = c.phi(sol.values[i]);
            const double lo = (p / c.m - u2) / p;
            const double hi = (u2 - p) / p;
            worst = std::max({worst, lo, hi});
        }
    }
    v.require(worst <= 1e-4, "phi/m <= u'' <= phi violated by " + str(worst) + " (relative)");
    v.note("worst relative excess", worst);
    return v.result();
}

// u(r) = a + 1/(m-2) [int_0^r s phi(u) ds - r^{2-m} int_0^r s^{m-1} phi(u) ds],
// accumulated with 10-point Gauss-Legendre on every grid cell of the Hermite interpolant.
std::vector<double> integral_equation_rhs(double m, const Phi& phi, const RadialSolution& sol) {
    const ProfileInterpolant u(sol);
    std::vector<double> out{sol.seed};
    double lin = 0.0, pw = 0.0;
    for (std::size_t i = 0; i + 1 < sol.grid.size(); ++i) {
        const double a = sol.grid[i], b = sol.grid[i + 1];
        lin += boost::math::quadrature::gauss<double, 10>::integrate([&](double s) { return s * phi(u.value(s)); }, a, b);
        pw += boost::math::quadrature::gauss<double, 10>::integrate(
            [&](double s) { return std::pow(s, m - 1.0) * phi(u.value(s)); }, a, b);
        out.push_back(sol.seed + (lin - std::pow(b, 2.0 - m) * pw) / (m - 2.0));
    }
    return out;
}

CheckResult integral_equation(const McOptions&) {
    Verdict v;
    double worst = 0.0;
    for (const auto& c : radial_cases()) {
        double r_end = 0.0;
        const auto sol = dense_profile(c.m, c.phi, c.a, 2001, r_end);
        const auto rhs = integral_equation_rhs(c.m, c.phi, sol);
        for (std::size_t i = 1; i < sol.grid.size(); ++i)
            worst = std::max(worst, std::abs(rhs[i] - sol.values[i]) / sol.values[i]);
    }
    v.require(worst <= 1e-8, "integral equation defect " + str(worst));
    v.note("worst relative defect", worst);
    return v.result();
}

CheckResult seed_round_trip(const McOptions&) {
    Verdict v;
    double worst = 0.0;
    const Phi phi = Phi::power(1.0, 2.0);
    for (double a : {0.5, 1.0, 2.0}) {
        const double R = blowup_radius(4.0, phi, a).radius;
        const double back = find_seed_for_radius(4.0, phi, R).seed;
        worst = std::max(worst, std::abs(back - a) / a);
    }
    v.require(worst <= 1e-3, "seed recovery error " + str(worst));
    v.note("worst relative error", worst);
    return v.result();
}

CheckResult ko_dichotomy(const McOptions&) {
    Verdict v;
    struct Row {
        Phi phi;
        EntireSolution want;
    };
    const std::vector<Row> table{{Phi::power(1.0, 1.0), EntireSolution::Exists},  {Phi::linear(2.0), EntireSolution::Exists},
                                 {Phi::power(1.0, 1.5), EntireSolution::NotExists}, {Phi::power(1.0, 2.0), EntireSolution::NotExists},
                                 {Phi::power(1.0, 3.0), EntireSolution::NotExists}, {Phi::exp_minus_one(1.0), EntireSolution::NotExists}};
    for (const auto& row : table) {
        const auto got = classify_entire_solution(3.0, row.phi);
        v.require(got == row.want, row.phi.to_text() + " classified " + to_string(got));
    }
    v.note("cases", table.size());
    return v.result();
}

// ----------------------------------------------------------- semilinear_solver

CheckResult dirichlet_sandwich(const McOptions&) {
    Verdict v;
    for (const auto& phi : phi_family()) {
        for (double m : {3.0, 5.0}) {
            for (double c : {0.5, 2.0}) {
                const DirichletProblem prob{m, phi, 1.0, c};
                const auto pic = picard_solve(prob);
                const auto rep = verify_solution(prob, pic.solution);
                v.require(rep.bounds_ok, phi.to_text() + " leaves [0, c]");
                v.require(rep.boundary_error <= 1e-9, phi.to_text() + " boundary error " + str(rep.boundary_error));
            }
        }
    }
    return v.result();
}

CheckResult dirichlet_monotone_in_c(const McOptions&) {
    Verdict v;
    for (const auto& phi : phi_family()) {
        std::vector<RadialSolution> sols;
        for (double c : {0.5, 1.0, 2.0}) sols.push_back(picard_solve({4.0, phi, 1.0, c}).solution);
        for (std::size_t i = 1; i < sols.size(); ++i)
            v.require(comparison_check(sols[i], sols[i - 1], 1e-9), phi.to_text() + ": larger data, smaller solution");
    }
    return v.result();
}

struct Agreement {
    double worst_gap = 0.0;
    double worst_fixed_point = 0.0;
    std::size_t cases = 0;
};

Agreement method_agreement_sweep(Verdict& v) {
    Agreement out;
    for (const auto& phi : phi_family()) {
        for (double m : {3.0, 4.0, 5.0}) {
            for (double c : {0.5, 1.0, 2.0}) {
                const DirichletProblem prob{m, phi, 1.0, c};
                const auto pic = picard_solve(prob).solution;
                const auto sho = solve_radial_dirichlet_shooting(m, phi, 1.0, c);
                const double gap = sup_distance(pic, sho);
                out.worst_gap = std::max(out.worst_gap, gap);
                for (const auto* s : {&pic, &sho})
                    out.worst_fixed_point = std::max(out.worst_fixed_point, verify_solution(prob, *s).fixedpoint_residual);
                v.require(gap <= 1e-6, phi.to_text() + " m=" + str(m) + " c=" + str(c) + " gap " + str(gap));
                ++out.cases;
            }
        }
    }
    return out;
}

CheckResult dirichlet_method_agreement(const McOptions&) {
    Verdict v;
    const auto a = method_agreement_sweep(v);
    v.note("cases", a.cases);
    v.note("worst sup gap", a.worst_gap);
    return v.result();
}

CheckResult dirichlet_below_blowup(const McOptions&) {
    Verdict v;
    const Phi phi = Phi::power(1.0, 2.0);
    for (double m : {3.0, 4.0}) {
        const auto ub = solve_blowup_problem(m, phi, 1.0);
        const ProfileInterpolant U(ub);
        const double rho = 0.99 * ub.blowup->bracket_low;
        const double top = U.value(rho);
        for (double c : {0.25 * top, top}) {
            const auto sol = solve_radial_dirichlet_shooting(m, phi, rho, c, 1e-12, 201);
            for (std::size_t i = 0; i < sol.grid.size(); ++i) {
                const double ref = U.value(sol.grid[i]);
                v.require(sol.values[i] <= ref * (1.0 + 1e-6), "Dirichlet solution above blow-up profile at r=" +
                                                                   str(sol.grid[i]));
            }
        }
        v.note("m=" + str(m) + " c_max", top);
    }
    return v.result();
}

// --------------------------------------------------------------- mc_simulator

CheckResult exit_time_closed_form(const McOptions& o) {
    Verdict v;
    std::uint64_t salt = 100;
    for (const char* text : {"a1:1", "a1xa1:0.75"}) {
        const RootSystem sys = io::parse_system(text);
        const int d = sys.dimension();
        const double m = sys.effective_dimension();
        for (double start : {0.0, 0.5}) {
            const Vec x0 = start == 0.0 ? Vec(Vec::Zero(d)) : generic_start(d, start);
            const auto s = run_exit(text, x0, DomainSpec::centered_ball(d, 1.0), o, o.paths, salt++);
            const double target = expected_exit_time_ball(m, 1.0, x0.norm());
            const double tol = 3.0 * s.stderr_time + 5.0 * o.h;
            v.require(std::abs(s.mean_time - target) <= tol,
                      std::string(text) + " |x0|=" + str(start) + " mean " + str(s.mean_time) + " vs " + str(target));
            v.note(std::string(text) + "|x0|=" + str(start) + " dev/tol", std::abs(s.mean_time - target) / tol);
        }
    }
    return v.result();
}

CheckResult jump_radius_invariance(const McOptions& o) {
    Verdict v;
    std::size_t jumps = 0, violations = 0;
    std::uint64_t salt = 200;
    for (const char* text : {"a1xa1:0.75", "dihedral:3:1", "b2:0.5,1"}) {
        const auto s = run_exit(text, generic_start(2, 0.5), DomainSpec::centered_ball(2, 1.0), o,
                                std::max<std::size_t>(o.paths / 4, 100), salt++);
        jumps += s.total_jumps;
        violations += s.radius_violations;
    }
    v.require(violations == 0, std::to_string(violations) + " jumps changed |X|");
    v.require(jumps > 0, "no jumps observed");
    v.note("jumps", jumps);
    return v.result();
}

CheckResult mc_determinism(const McOptions& o) {
    Verdict v;
    SimConfig cfg;
    cfg.h = o.h;
    cfg.n_paths = std::min<std::size_t>(o.paths, 2000);
    cfg.rng_seed = o.seed + 300;
    cfg.threads = 1;
    const RootSystem sys = io::parse_system("dihedral:3:1");
    const auto D = DomainSpec::centered_ball(2, 1.0);
    const auto a = simulate_exit(sys, generic_start(2, 0.4), D, cfg);
    cfg.threads = std::max(2u, worker_count(o.threads));
    const auto b = simulate_exit(sys, generic_start(2, 0.4), D, cfg);
    v.require(a.size() == b.size(), "different path counts");
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        const bool same = a[i].exit_time == b[i].exit_time && a[i].exit_point == b[i].exit_point &&
                          a[i].n_jumps == b[i].n_jumps && a[i].capped == b[i].capped;
        v.require(same, "path " + std::to_string(i) + " differs between reruns");
    }
    v.note("paths", a.size());
    return v.result();
}

struct SupportCase {
    const char* label;
    const char* system;
    DomainSpec domain;
    Vec x0;
    double threshold;
};

std::vector<SupportCase> support_cases() {
    Vec c(2), n(2), x_centered(2), x_half(2);
    c << 0.6, 0.3;
    n << 1.0, 0.0;
    x_centered << 0.3, 0.2;
    x_half << 0.5, 0.3;
    return {{"centered_ball", "a1xa1:0.75", DomainSpec::centered_ball(2, 1.0), x_centered, 0.999},
            {"offset_ball", "a1xa1:0.75", DomainSpec::offset_ball(c, 0.25), c, 0.995},
            {"half_ball", "a1xa1:0.75", DomainSpec::half_ball(1.0, n), x_half, 0.995}};
}

CheckResult support_fraction(const McOptions& o) {
    Verdict v;
    std::uint64_t salt = 400;
    for (const auto& sc : support_cases()) {
        SimConfig cfg;
        cfg.h = o.h;
        cfg.n_paths = o.paths;
        cfg.rng_seed = o.seed + salt++;
        cfg.threads = o.threads;
        const auto rep = estimate_harmonic_support(io::parse_system(sc.system), sc.x0, sc.domain, cfg);
        v.require(rep.fraction >= sc.threshold, std::string(sc.label) + " fraction " + str(rep.fraction));
        v.note(std::string(sc.label), rep.fraction);
    }
    return v.result();
}

CheckResult bessel_cross_check(const McOptions& o) {
    Verdict v;
    std::uint64_t salt = 500;
    for (const char* text : {"a1:1", "a1xa1:0.75"}) {
        const RootSystem sys = io::parse_system(text);
        const double m = sys.effective_dimension();
        const auto dk = run_exit(text, Vec::Zero(sys.dimension()), DomainSpec::centered_ball(sys.dimension(), 1.0), o,
                                 o.paths, salt++);
        SimConfig cfg;
        cfg.h = o.h;
        cfg.n_paths = o.paths;
        cfg.rng_seed = o.seed + salt++;
        cfg.threads = o.threads;
        const auto times = simulate_bessel_exit(m, 1.0, cfg);
        double mean = 0.0, sq = 0.0;
        for (double t : times) mean += t;
        mean /= static_cast<double>(times.size());
        for (double t : times) sq += (t - mean) * (t - mean);
        const double se = std::sqrt(sq / (static_cast<double>(times.size()) - 1.0) / static_cast<double>(times.size()));
        const double target = 1.0 / (2.0 * m);
        v.require(std::abs(mean - target) <= 3.0 * se + 5.0 * o.h, std::string(text) + " Bessel mean " + str(mean));
        const double gap = std::abs(mean - dk.mean_time);
        v.require(gap <= 3.0 * std::hypot(se, dk.stderr_time) + 5.0 * o.h,
                  std::string(text) + " Dunkl vs Bessel gap " + str(gap));
        v.note(std::string(text) + " dunkl/bessel", str(dk.mean_time) + "/" + str(mean));
    }
    return v.result();
}

CheckResult radial_law(const McOptions& o) {
    Verdict v;
    SimConfig cfg;
    cfg.h = o.h;
    cfg.n_paths = o.paths;
    cfg.rng_seed = o.seed + 600;
    cfg.threads = o.threads;
    const auto rep = radial_law_sample(io::parse_system("a1xa1:0.75"), 500.0 * o.h, cfg);
    v.require(rep.ks_statistic < rep.ks_critical_1pct, "KS " + str(rep.ks_statistic) + " >= " + str(rep.ks_critical_1pct));
    v.note("KS", rep.ks_statistic);
    v.note("critical", rep.ks_critical_1pct);
    return v.result();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CheckResult named(CheckResult r, const std::string& name, std::chrono::steady_clock::time_point t0) {
    r.name = name;
    r.seconds = seconds_since(t0);
    return r;
}

}  // namespace

const std::vector<Invariant>& library_invariants() {
    static const std::vector<Invariant> list{
        {"root_system.reflection_isometry", false, reflection_isometry},
        {"root_system.weight_w_invariance", false, weight_invariance},
        {"root_system.full_system_symmetric", false, full_system_symmetric},
        {"root_system.group_closure", false, group_closure},
        {"dunkl_calculus.radial_agreement", false, radial_agreement},
        {"dunkl_calculus.convergence_order", false, convergence_order},
        {"dunkl_calculus.green_profile_harmonic", false, green_profile_harmonic},
        {"green_kernels.branch_continuity", false, branch_continuity},
        {"green_kernels.potential_monotone_decay", false, potential_monotone_decay},
        {"green_kernels.pointwise_bound_origin", false, pointwise_bound_origin},
        {"green_kernels.green_one_is_exit_time", false, green_one_is_exit_time},
        {"green_kernels.linearity", false, green_linearity},
        {"green_kernels.heat_kernel_time_integral", false, heat_kernel_time_integral},
        {"radial_engine.seed_monotonicity", false, seed_monotonicity},
        {"radial_engine.apriori_bound", false, apriori_bound},
        {"radial_engine.derivative_sign_bound", false, derivative_sign_bound},
        {"radial_engine.second_derivative_bracket", false, second_derivative_bracket},
        {"radial_engine.integral_equation", false, integral_equation},
        {"radial_engine.seed_round_trip", false, seed_round_trip},
        {"radial_engine.ko_dichotomy", false, ko_dichotomy},
        {"semilinear_solver.solution_sandwich", false, dirichlet_sandwich},
        {"semilinear_solver.monotone_in_boundary_data", false, dirichlet_monotone_in_c},
        {"semilinear_solver.method_agreement", false, dirichlet_method_agreement},
        {"semilinear_solver.below_blowup_profile", false, dirichlet_below_blowup},
        {"mc_simulator.jump_radius_invariance", true, jump_radius_invariance},
        {"mc_simulator.determinism", true, mc_determinism},
        {"mc_simulator.exit_time_closed_form", true, exit_time_closed_form},
        {"mc_simulator.support_fraction", true, support_fraction},
        {"mc_simulator.bessel_cross_check", true, bessel_cross_check},
        {"mc_simulator.radial_law", true, radial_law},
    };
    return list;
}

std::vector<CheckResult> run_suite(const std::vector<Invariant>& invariants, const SuiteOptions& options,
                                   const std::function<void(const CheckResult&)>& progress) {
    for (const auto& name : options.inject_failures) {
        const bool known = std::any_of(invariants.begin(), invariants.end(), [&](const Invariant& i) { return i.name == name; });
        if (!known) fail(ErrorCode::ConfigError, "unknown invariant '" + name + "'");
    }
    std::vector<CheckResult> out;
    for (const auto& inv : invariants) {
        if (inv.monte_carlo && !options.full) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = inv.run(options.mc);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("threw ") + e.what();
        }
        r = named(r, inv.name, t0);
        if (std::find(options.inject_failures.begin(), options.inject_failures.end(), inv.name) !=
            options.inject_failures.end()) {
            r.passed = false;
            r.detail = "injected failure; measured: " + r.detail;
        }
        if (progress) progress(r);
        out.push_back(r);
    }
    return out;
}

// ------------------------------------------------------------ acceptance

CheckResult criterion_kernels() {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    // Both branches written out independently of the library.
    auto closed = [](double m, double r, double rho) {
        if (rho <= r) return (rho * rho / m + (r * r - rho * rho) / 2.0) / (m - 2.0);
        return std::pow(r, m) * std::pow(rho, 2.0 - m) / (m * (m - 2.0));
    };
    std::size_t triples = 0;
    double worst = 0.0;
    for (double m : {2.5, 3.0, 4.0, 5.0, 10.0}) {
        for (double r : {0.5, 2.0}) {
            for (double f : {0.0, 0.5, 1.0, 1.5, 3.0}) {
                const double rho = f * r;
                const double want = closed(m, r, rho);
                const double err = std::abs(green_potential_ball(m, r, rho) - want) / std::max(1.0, std::abs(want));
                worst = std::max(worst, err);
                ++triples;
            }
        }
    }
    v.require(worst <= 1e-12, "ball potential deviates by " + str(worst));
    v.note("triples", triples);

    for (double m : {3.0, 4.0, 5.0}) {
        for (auto [t, s] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.0}, std::pair{0.2, 3.0}}) {
            const double bound = green_annulus_bound(m, t, s);
            for (int i = 0; i <= 200; ++i) {
                const double rho = 2.0 * s * i / 200.0;
                const double direct = green_potential_ball(m, s, rho) - green_potential_ball(m, t, rho);
                v.require(direct <= bound, "annulus bound exceeded at rho=" + str(rho));
            }
        }
    }

    const KernelContext ctx = kernel_context(io::parse_system("a1:1"));
    double worst_origin = 0.0;
    for (double rho : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double want = 1.0 / (4.0 * rho);
        worst_origin = std::max(worst_origin, std::abs(green_origin(ctx, rho) - want) / want);
    }
    v.require(worst_origin <= 1e-9, "G(x,0) vs 1/(4|x|) " + str(worst_origin));
    v.note("G(x,0) rel err", worst_origin);
    return named(v.result(), "closed_form_kernels", t0);
}

CheckResult criterion_calculus() {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    std::mt19937_64 rng(31);
    double worst_linear = 0.0, worst_square = 0.0;
    for (const char* text : {"a1:1", "a1xa1:0.75", "dihedral:3:1", "dihedral:4:0.5,1", "b2:0.5,1", "a1xa1xa1:0.5"}) {
        const RootSystem sys = io::parse_system(text);
        const double m = sys.effective_dimension();
        for (int i = 0; i < 10; ++i) {
            const Vec c = random_point(rng, sys.dimension());
            const Vec x = point_off_walls(sys, rng, 1.0, 0.05);
            const ScalarField lin{[&](const Vec& y) { return c.dot(y); }, Smoothness::C2};
            const ScalarField sq{[](const Vec& y) { return y.squaredNorm(); }, Smoothness::RadialC2};
            worst_linear = std::max(worst_linear, std::abs(apply_dunkl_laplacian(sys, lin, x, 1e-3)));
            worst_square =
                std::max(worst_square, std::abs(apply_dunkl_laplacian(sys, sq, x, 1e-3) - 2.0 * m) / (2.0 * m));
        }
    }
    v.require(worst_linear <= 1e-6, "Delta_k(linear) = " + str(worst_linear));
    v.require(worst_square <= 1e-4, "Delta_k|x|^2 relative error " + str(worst_square));
    v.note("linear", worst_linear);
    v.note("|x|^2 rel", worst_square);

    // Central differences are exact on |x|^2, so the order is observed on exp(<a, x>).
    double lo = kInf, hi = 0.0;
    for (const char* text : {"a1:1", "a1xa1:0.75", "dihedral:3:1", "b2:0.5,1"}) {
        const RootSystem sys = io::parse_system(text);
        Vec a = random_point(rng, sys.dimension());
        a *= 1.2 / a.norm();
        const Vec x = point_off_walls(sys, rng, 1.2, 0.25);
        for (double q : observed_orders(sys, a, x)) {
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
    }
    v.require(lo >= 1.7 && hi <= 2.3, "observed order outside 2.0 +- 0.3");
    v.note("order range [" + str(lo) + ", " + str(hi) + "]");
    return named(v.result(), "dunkl_calculus", t0);
}

CheckResult criterion_radial() {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;

    // (a)
    const double u1 = integrate_radial_ivp(4.0, Phi::linear(1.0), 1.0, 1.0).values.back();
    v.require(std::abs(u1 - 1.130318207984970) <= 1e-6, "(a) u_1(1) = " + str(u1));
    v.note("(a) u1(1)", u1);

    // (b)
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> ua(0.1, 3.0), um(2.5, 8.0);
    const auto family = phi_family();
    std::size_t checked = 0;
    for (int i = 0; i < 20; ++i) {
        const Phi& phi = family[rng() % family.size()];
        const double a = ua(rng);
        const double m = um(rng);
        const auto sol = profile(m, phi, a);
        bool ok = true;
        for (std::size_t j = 0; j < sol.grid.size(); ++j) {
            const double r = sol.grid[j];
            const double bound = a + phi(a) * r * r / (2.0 * m);
            if (sol.values[j] < bound - 1e-12 * std::max(1.0, bound)) ok = false;
            ++checked;
        }
        v.require(ok, "(b) a-priori bound fails for " + phi.to_text() + " a=" + str(a) + " m=" + str(m));
    }
    v.note("(b) points", checked);

    // (c)
    const Phi sq = Phi::power(1.0, 2.0);
    for (double m : {3.0, 4.0, 5.0}) {
        for (double a : {0.5, 1.0, 2.0}) {
            const auto rep = sandwich_check(m, sq, a);
            v.require(rep.sandwich && rep.sandwich->ok, "(c) sandwich fails m=" + str(m) + " a=" + str(a));
        }
    }

    // (d)
    double worst_trip = 0.0;
    for (double a : {0.5, 1.0, 2.0}) {
        const double R = blowup_radius(4.0, sq, a).radius;
        worst_trip = std::max(worst_trip, std::abs(find_seed_for_radius(4.0, sq, R).seed - a) / a);
    }
    v.require(worst_trip <= 1e-3, "(d) seed round trip error " + str(worst_trip));
    v.note("(d) round trip", worst_trip);

    // (e)
    const std::vector<std::pair<Phi, KOClass>> table{{Phi::power(1.0, 1.0), KOClass::Holds},
                                                     {Phi::power(1.0, 1.5), KOClass::Fails},
                                                     {Phi::power(1.0, 2.0), KOClass::Fails},
                                                     {Phi::power(1.0, 3.0), KOClass::Fails},
                                                     {Phi::exp_minus_one(1.0), KOClass::Fails}};
    for (const auto& [phi, want] : table) {
        const auto got = ko_report(phi, 1.0).classification;
        v.require(got == want, "(e) " + phi.to_text() + " classified " + to_string(got));
    }
    return named(v.result(), "radial_engine", t0);
}

CheckResult criterion_semilinear() {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    const auto a = method_agreement_sweep(v);
    v.note("agreement cases", a.cases);
    v.note("worst gap", a.worst_gap);
    double worst_fp = a.worst_fixed_point;

    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> uc(0.0, 2.0), um(2.5, 6.0), ur(0.5, 2.0);
    const auto family = phi_family();
    int pairs = 0;
    for (int i = 0; i < 50; ++i) {
        const Phi& phi = family[rng() % family.size()];
        const double m = um(rng), R = ur(rng);
        double c1 = uc(rng), c2 = uc(rng);
        if (c1 > c2) std::swap(c1, c2);
        const DirichletProblem p1{m, phi, R, c1}, p2{m, phi, R, c2};
        const auto s1 = picard_solve(p1).solution;
        const auto s2 = picard_solve(p2).solution;
        v.require(comparison_check(s2, s1, 1e-9), "comparison fails for " + phi.to_text());
        worst_fp = std::max({worst_fp, verify_solution(p1, s1).fixedpoint_residual,
                             verify_solution(p2, s2).fixedpoint_residual});
        ++pairs;
    }
    v.note("ordered pairs", pairs);
    v.require(worst_fp <= 1e-9, "fixed-point residual " + str(worst_fp));
    v.note("worst fixed-point residual", worst_fp);
    return named(v.result(), "semilinear_solver", t0);
}

CheckResult criterion_monte_carlo(const McAcceptanceOptions& o) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    std::size_t violations = 0;
    auto config = [&](std::size_t paths, std::uint64_t salt) {
        SimConfig cfg;
        cfg.h = o.h;
        cfg.n_paths = paths;
        cfg.rng_seed = o.seed + salt;
        cfg.threads = o.threads;
        return cfg;
    };

    // (a)
    std::vector<ExitSample> first_run;
    for (const char* text : {"a1:1", "a1xa1:0.75"}) {
        const RootSystem sys = io::parse_system(text);
        const int d = sys.dimension();
        const auto samples = simulate_exit(sys, Vec::Zero(d), DomainSpec::centered_ball(d, 1.0), config(o.exit_paths, 1));
        const auto s = summarize(samples);
        violations += s.radius_violations;
        const double target = 1.0 / (2.0 * sys.effective_dimension());
        const double tol = 3.0 * s.stderr_time + 5.0 * o.h;
        v.require(std::abs(s.mean_time - target) <= tol, std::string("(a) ") + text + " mean " + str(s.mean_time));
        v.note(std::string("(a) ") + text + " mean", str(s.mean_time) + " target " + str(target) + " tol " + str(tol));
        if (first_run.empty()) first_run.assign(samples.begin(), samples.begin() + std::min(samples.size(), o.rerun_paths));
    }

    // (b)
    std::uint64_t salt = 10;
    for (const auto& sc : support_cases()) {
        const auto rep = estimate_harmonic_support(io::parse_system(sc.system), sc.x0, sc.domain, config(o.support_paths, salt++));
        violations += rep.exits.radius_violations;
        v.require(rep.fraction >= sc.threshold, std::string("(b) ") + sc.label + " fraction " + str(rep.fraction));
        v.note(std::string("(b) ") + sc.label, rep.fraction);
    }

    // (c)
    v.require(violations == 0, "(c) " + std::to_string(violations) + " radius violations");
    v.note("(c) violations", violations);

    // (d)
    const RootSystem law_sys = io::parse_system("a1xa1:0.75");
    const auto law = radial_law_sample(law_sys, o.law_t, config(o.law_paths, 20));
    v.require(law.ks_statistic < law.ks_critical_1pct, "(d) KS " + str(law.ks_statistic));
    v.note("(d) KS", str(law.ks_statistic) + " < " + str(law.ks_critical_1pct));

    // (e) rerun the first exit experiment with the same seed (prefix of the path set)
    const RootSystem sys = io::parse_system("a1:1");
    const auto again = simulate_exit(sys, Vec::Zero(1), DomainSpec::centered_ball(1, 1.0), config(first_run.size(), 1));
    bool identical = again.size() == first_run.size();
    for (std::size_t i = 0; identical && i < again.size(); ++i) {
        identical = again[i].exit_time == first_run[i].exit_time && again[i].exit_point == first_run[i].exit_point &&
                    again[i].n_jumps == first_run[i].n_jumps;
    }
    v.require(identical, "(e) rerun differs");
    v.note("(e) identical paths", again.size());
    return named(v.result(), "monte_carlo", t0);
}

}  // namespace dunkl::verify
