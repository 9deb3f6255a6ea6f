#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dunkl/linalg.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

enum class LevyRateConvention {
    Generator,   // k(alpha) |alpha|^2 / <alpha, x>^2 per positive root
    PrintedLvk,  // k(alpha) / <alpha, x>^2
};
std::string to_string(LevyRateConvention c);
LevyRateConvention levy_rate_convention_from_string(const std::string& s);

struct SimConfig {
    double h = 1e-4;
    std::size_t n_paths = 10000;
    std::uint64_t rng_seed = 0;
    double max_time = 100.0;
    double wall_guard = 1e-8;
    std::size_t jump_cap = 1000000;
    LevyRateConvention levy = LevyRateConvention::Generator;
    /// Kill paths whose continuous increment may have crossed the spherical
    /// part of the boundary between grid times (Brownian bridge test).
    bool bridge_correction = true;
    /// 0: DUNKL_LAB_THREADS, else hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

/// Per-path random stream: a Mersenne twister seeded from (seed, path index).
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path);
    double normal() { return normal_(engine_); }
    double uniform() { return std::generate_canonical<double, 53>(engine_); }
    double gamma(double shape);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

class DomainSpec {
public:
    enum class Kind { CenteredBall, OffsetBall, HalfBall };

    static DomainSpec centered_ball(int d, double r);
    static DomainSpec offset_ball(const Vec& center, double r);
    /// {|x| < r, <x, n> > 0}; n is normalized on construction.
    static DomainSpec half_ball(double r, const Vec& normal);
    /// `centered_ball:r | offset_ball:r,c1,...,cd | half_ball:r,n1,...,nd`.
    static DomainSpec parse(const std::string& text, int d);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(center_.size()); }
    [[nodiscard]] double radius() const noexcept { return radius_; }
    [[nodiscard]] const Vec& center() const noexcept { return center_; }
    [[nodiscard]] const Vec& normal() const noexcept { return normal_; }
    [[nodiscard]] std::string to_text() const;

    /// Strict (open set) membership.
    [[nodiscard]] bool contains(const Vec& x) const;
    /// Euclidean distance to the closed domain; 0 on it.
    [[nodiscard]] double distance_to_closure(const Vec& x) const;
    /// r - |x - c|: signed distance to the bounding sphere.
    [[nodiscard]] double sphere_distance(const Vec& x) const;
    /// Radial projection onto the bounding sphere, on or just outside it.
    [[nodiscard]] Vec project_to_sphere(const Vec& x) const;

private:
    Kind kind_ = Kind::CenteredBall;
    Vec center_;
    Vec normal_;
    double radius_ = 1.0;
};

/// Euler scheme with singular drift and thinned reflection jumps.
class DunklProcess {
public:
    DunklProcess(const RootSystem& sys, LevyRateConvention levy, double wall_guard);

    [[nodiscard]] const RootSystem& system() const noexcept { return sys_; }

    /// b(x) = 2 sum_{R+} k(alpha) alpha / <alpha, x>.
    [[nodiscard]] Vec drift(const Vec& x) const;
    /// Jump intensity towards sigma_alpha x for positive root i.
    [[nodiscard]] double jump_rate(std::size_t i, const Vec& x) const;
    /// Largest step for which the drift moves each <alpha, x> by at most half its value.
    [[nodiscard]] double safe_step(const Vec& x) const;
    /// True if x keeps distance >= wall_guard from every hyperplane with k > 0.
    [[nodiscard]] bool off_walls(const Vec& x) const;

    struct Increment {
        Vec x;
        double dt = 0.0;
        bool ok = false;  // false: wall guard exhausted all halvings
        int resamples = 0;
        int halvings = 0;
    };
    /// Continuous part over min(h, safe_step(x)): x + b h' + sqrt(2 h') xi.
    /// A candidate that comes within wall_guard of a hyperplane or crosses one
    /// is redrawn once, then h' is halved (at most 20 times).
    Increment continuous_increment(const Vec& x, double h, PathRng& rng) const;

    /// Thinning with intensities frozen at x_start; roots in fixed order, at
    /// most one jump. Returns the index of the root used, or -1.
    int maybe_jump(const Vec& x_start, Vec& x, double dt, PathRng& rng) const;

    /// Exact draw of X_t started at 0: |X_t|^2 / 4t ~ Gamma(m/2, 1) and an
    /// independent direction with density proportional to w_k on the sphere.
    Vec sample_from_origin(double t, PathRng& rng) const;

private:
    RootSystem sys_;
    LevyRateConvention levy_;
    double wall_guard_;
    double weight_bound_;  // sup of w_k on the unit sphere (Cauchy-Schwarz)
};

struct StepResult {
    Vec state;
    bool jumped = false;
    double dt = 0.0;
    bool ok = true;
};

/// One sub-step: continuous increment then the thinned jump decision.
StepResult step_process(const DunklProcess& proc, const Vec& state, double h, PathRng& rng);

struct ExitSample {
    double exit_time = 0.0;
    Vec exit_point;
    std::size_t n_jumps = 0;
    bool capped = false;   // horizon, jump cap or wall-guard abort
    bool aborted = false;  // wall guard gave up
    bool bridge_exit = false;
    std::size_t radius_violations = 0;  // jumps that changed |x| by more than 1e-12 relative
};

/// Runs cfg.n_paths independent paths from x0 until they leave D. A start at
/// the origin is launched with the exact law of X_h. A start on the boundary
/// exits at time 0.
std::vector<ExitSample> simulate_exit(const RootSystem& sys, const Vec& x0, const DomainSpec& D, const SimConfig& cfg);

struct ExitSummary {
    std::size_t n = 0;
    double mean_time = 0.0;
    double stderr_time = 0.0;
    double capped_fraction = 0.0;
    std::size_t aborted = 0;
    std::size_t total_jumps = 0;
    std::size_t radius_violations = 0;
    double bridge_fraction = 0.0;
};
ExitSummary summarize(const std::vector<ExitSample>& samples);

/// z in Gamma_D = closure(union w(D)) \ D, up to tol: z outside D and
/// min_w dist(w^T z, closure(D)) <= tol.
bool gamma_D(const std::vector<GroupElement>& group, const DomainSpec& D, const Vec& z, double tol);
double gamma_D_distance(const std::vector<GroupElement>& group, const Vec& z, const DomainSpec& D);

struct SupportReport {
    std::size_t n = 0;
    std::size_t landed = 0;
    double fraction = 0.0;
    double worst_distance = 0.0;
    double tolerance = 0.0;
    ExitSummary exits;
};

/// Fraction of exit points in Gamma_D. tol <= 0 selects 4 sqrt(2h).
SupportReport estimate_harmonic_support(const RootSystem& sys, const Vec& x0, const DomainSpec& D, const SimConfig& cfg,
                                        double tol = 0.0);

struct RadialLawReport {
    std::vector<double> radii;  // |X_t|
    double t = 0.0;
    double m = 0.0;
    double mean_scaled = 0.0;   // mean of |X_t|^2 / 4t, target m/2
    double stderr_scaled = 0.0;
    double ks_statistic = 0.0;
    double ks_critical_1pct = 0.0;
    std::size_t aborted = 0;
};

/// |X_t| for paths started at 0 (exact launch to time h, Euler after).
/// Requires t >= 100 h.
RadialLawReport radial_law_sample(const RootSystem& sys, double t, const SimConfig& cfg);

/// Kolmogorov-Smirnov distance of the samples from Gamma(shape, 1).
double ks_gamma(std::vector<double> samples, double shape);
double ks_critical_1pct(std::size_t n);

/// Exit times of the Bessel process rho'' generator d^2 + (m-1)/rho d from
/// [0, r) started at 0, with the same launch, step and bridge rules.
std::vector<double> simulate_bessel_exit(double m, double r, const SimConfig& cfg);

/// Worker count from DUNKL_LAB_THREADS, else hardware concurrency (>= 1).
unsigned worker_count(unsigned requested = 0);

/// Calls fn(i) for i in [0, n) on a worker pool; fn must only touch slot i.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace dunkl
