#include "dunkl/mc_simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "dunkl/error.hpp"

namespace dunkl {

namespace {

constexpr int kMaxHalvings = 20;
constexpr double kRadiusTol = 1e-12;

std::vector<double> parse_list(const std::string& body, const std::string& full) {
    std::vector<double> out;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (tok.empty() || pos != tok.size()) fail(ErrorCode::InvalidArgument, "malformed number in domain '" + full + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

std::string to_string(LevyRateConvention c) {
    return c == LevyRateConvention::Generator ? "generator" : "printed_lvk";
}

LevyRateConvention levy_rate_convention_from_string(const std::string& s) {
    if (s == "generator") return LevyRateConvention::Generator;
    if (s == "printed_lvk") return LevyRateConvention::PrintedLvk;
    fail(ErrorCode::InvalidArgument, "unknown levy_rate_convention '" + s + "'");
}

void SimConfig::validate() const {
    if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "step h must be positive");
    if (n_paths == 0) fail(ErrorCode::InvalidArgument, "n_paths must be positive");
    if (!(max_time > 0.0)) fail(ErrorCode::InvalidArgument, "max_time must be positive");
    if (!(wall_guard > 0.0)) fail(ErrorCode::InvalidArgument, "wall guard must be positive");
    if (jump_cap == 0) fail(ErrorCode::InvalidArgument, "jump_cap must be positive");
}

PathRng::PathRng(std::uint64_t seed, std::uint64_t path) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
    engine_.seed(seq);
}

double PathRng::gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(engine_); }

// ---------------------------------------------------------------------------
// Domains

DomainSpec DomainSpec::centered_ball(int d, double r) {
    if (d < 1 || d > kMaxDim) fail(ErrorCode::InvalidArgument, "domain dimension out of range");
    if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "domain radius must be positive");
    DomainSpec D;
    D.kind_ = Kind::CenteredBall;
    D.center_ = Vec::Zero(d);
    D.normal_ = Vec::Zero(d);
    D.radius_ = r;
    return D;
}

DomainSpec DomainSpec::offset_ball(const Vec& center, double r) {
    DomainSpec D = centered_ball(static_cast<int>(center.size()), r);
    D.kind_ = Kind::OffsetBall;
    D.center_ = center;
    return D;
}

DomainSpec DomainSpec::half_ball(double r, const Vec& normal) {
    DomainSpec D = centered_ball(static_cast<int>(normal.size()), r);
    if (!(normal.norm() > 0.0)) fail(ErrorCode::InvalidArgument, "half-ball normal must be nonzero");
    D.kind_ = Kind::HalfBall;
    D.normal_ = normal.normalized();
    return D;
}

DomainSpec DomainSpec::parse(const std::string& text, int d) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) fail(ErrorCode::InvalidArgument, "domain '" + text + "' lacks ':'");
    const std::string kind = text.substr(0, colon);
    const auto nums = parse_list(text.substr(colon + 1), text);
    auto vec_tail = [&]() {
        if (nums.size() != static_cast<std::size_t>(d) + 1) {
            std::ostringstream msg;
            msg << "domain '" << text << "' needs a radius and " << d << " coordinates";
            fail(ErrorCode::InvalidArgument, msg.str());
        }
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = nums[static_cast<std::size_t>(i) + 1];
        return v;
    };
    if (kind == "centered_ball") {
        if (nums.size() != 1) fail(ErrorCode::InvalidArgument, "centered_ball takes one radius");
        return centered_ball(d, nums[0]);
    }
    if (kind == "offset_ball") return offset_ball(vec_tail(), nums[0]);
    if (kind == "half_ball") return half_ball(nums[0], vec_tail());
    fail(ErrorCode::InvalidArgument, "unknown domain kind '" + kind + "'");
}

std::string DomainSpec::to_text() const {
    std::ostringstream s;
    s.precision(17);
    switch (kind_) {
        case Kind::CenteredBall: s << "centered_ball:" << radius_; break;
        case Kind::OffsetBall:
            s << "offset_ball:" << radius_;
            for (int i = 0; i < center_.size(); ++i) s << ',' << center_[i];
            break;
        case Kind::HalfBall:
            s << "half_ball:" << radius_;
            for (int i = 0; i < normal_.size(); ++i) s << ',' << normal_[i];
            break;
    }
    return s.str();
}

bool DomainSpec::contains(const Vec& x) const {
    if (!((x - center_).norm() < radius_)) return false;
    return kind_ != Kind::HalfBall || x.dot(normal_) > 0.0;
}

double DomainSpec::distance_to_closure(const Vec& x) const {
    if (kind_ != Kind::HalfBall) return std::max(0.0, (x - center_).norm() - radius_);
    const double s = x.dot(normal_);
    if (s >= 0.0) return std::max(0.0, x.norm() - radius_);
    const Vec p = x - s * normal_;
    const double pn = p.norm();
    if (pn <= radius_) return -s;
    return (x - p * (radius_ / pn)).norm();
}

double DomainSpec::sphere_distance(const Vec& x) const { return radius_ - (x - center_).norm(); }

Vec DomainSpec::project_to_sphere(const Vec& x) const {
    const Vec v = x - center_;
    const double n = v.norm();
    if (n == 0.0) return x;
    // Nudge outward until rounding no longer places the point inside.
    double scale = radius_ / n;
    Vec p = center_ + v * scale;
    for (int i = 0; i < 8 && (p - center_).norm() < radius_; ++i) {
        scale *= 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
        p = center_ + v * scale;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Process

DunklProcess::DunklProcess(const RootSystem& sys, LevyRateConvention levy, double wall_guard)
    : sys_(sys), levy_(levy), wall_guard_(wall_guard) {
    double sum = 0.0;
    for (double k : sys_.multiplicities()) sum += k;
    weight_bound_ = std::pow(2.0, sum);
}

Vec DunklProcess::drift(const Vec& x) const {
    Vec b = Vec::Zero(x.size());
    const auto roots = sys_.positive_roots();
    const auto k = sys_.multiplicities();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (k[i] == 0.0) continue;
        b += (2.0 * k[i] / roots[i].dot(x)) * roots[i];
    }
    return b;
}

double DunklProcess::jump_rate(std::size_t i, const Vec& x) const {
    const auto& alpha = sys_.positive_roots()[i];
    const double k = sys_.multiplicities()[i];
    const double s = alpha.dot(x);
    const double scale = levy_ == LevyRateConvention::Generator ? alpha.squaredNorm() : 1.0;
    return k * scale / (s * s);
}

double DunklProcess::safe_step(const Vec& x) const {
    const Vec b = drift(x);
    const auto roots = sys_.positive_roots();
    const auto k = sys_.multiplicities();
    double hs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (k[i] == 0.0) continue;
        const double rate = std::abs(roots[i].dot(b));
        if (rate > 0.0) hs = std::min(hs, 0.5 * std::abs(roots[i].dot(x)) / rate);
    }
    return hs;
}

bool DunklProcess::off_walls(const Vec& x) const {
    const auto roots = sys_.positive_roots();
    const auto k = sys_.multiplicities();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (k[i] == 0.0) continue;
        // Distance to the hyperplane alpha^perp.
        if (std::abs(roots[i].dot(x)) / roots[i].norm() < wall_guard_) return false;
    }
    return true;
}

DunklProcess::Increment DunklProcess::continuous_increment(const Vec& x, double h, PathRng& rng) const {
    const auto roots = sys_.positive_roots();
    const auto k = sys_.multiplicities();
    const Vec b = drift(x);
    Increment inc;
    double hp = std::min(h, safe_step(x));
    const int d = static_cast<int>(x.size());
    Vec xi(d);
    auto acceptable = [&](const Vec& cand) {
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (k[i] == 0.0) continue;
            const double before = roots[i].dot(x);
            const double after = roots[i].dot(cand);
            if (std::abs(after) / roots[i].norm() < wall_guard_ || (before > 0.0) != (after > 0.0)) return false;
        }
        return true;
    };
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
        const double sd = std::sqrt(2.0 * hp);
        for (int attempt = 0; attempt < 2; ++attempt) {
            for (int j = 0; j < d; ++j) xi[j] = rng.normal();
            Vec cand = x + hp * b + sd * xi;
            if (acceptable(cand)) {
                inc.x = cand;
                inc.dt = hp;
                inc.ok = true;
                inc.halvings = halving;
                return inc;
            }
            ++inc.resamples;
        }
        hp *= 0.5;
    }
    inc.x = x;
    inc.dt = 0.0;
    inc.ok = false;
    inc.halvings = kMaxHalvings;
    return inc;
}

int DunklProcess::maybe_jump(const Vec& x_start, Vec& x, double dt, PathRng& rng) const {
    const auto roots = sys_.positive_roots();
    const auto k = sys_.multiplicities();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (k[i] == 0.0) continue;
        const double p = -std::expm1(-jump_rate(i, x_start) * dt);
        if (rng.uniform() < p) {
            x = reflect(roots[i], x);
            return static_cast<int>(i);
        }
    }
    return -1;
}

Vec DunklProcess::sample_from_origin(double t, PathRng& rng) const {
    const int d = sys_.dimension();
    const double radius = std::sqrt(4.0 * t * rng.gamma(0.5 * sys_.effective_dimension()));
    Vec dir(d);
    while (true) {
        for (int j = 0; j < d; ++j) dir[j] = rng.normal();
        const double n = dir.norm();
        if (n == 0.0) continue;
        dir /= n;
        if (rng.uniform() * weight_bound_ <= sys_.weight(dir) && off_walls(dir * radius)) break;
    }
    return dir * radius;
}

StepResult step_process(const DunklProcess& proc, const Vec& state, double h, PathRng& rng) {
    StepResult out;
    const auto inc = proc.continuous_increment(state, h, rng);
    out.ok = inc.ok;
    out.dt = inc.dt;
    out.state = inc.x;
    if (!inc.ok) return out;
    out.jumped = proc.maybe_jump(state, out.state, inc.dt, rng) >= 0;
    return out;
}

// ---------------------------------------------------------------------------
// Workers

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DUNKL_LAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Exit simulation

namespace {

void check_start(const RootSystem& sys, const DunklProcess& proc, const Vec& x0, const DomainSpec& D) {
    if (x0.size() != sys.dimension() || D.dimension() != sys.dimension()) {
        fail(ErrorCode::InvalidArgument, "start point, domain and root system dimensions differ");
    }
    if (D.distance_to_closure(x0) > 1e-12) fail(ErrorCode::OutsideBall, "start point lies outside the domain");
    if (x0.norm() > 0.0 && !proc.off_walls(x0)) {
        fail(ErrorCode::NearHyperplane, "start point lies on a reflecting hyperplane; pick a generic direction");
    }
}

ExitSample run_exit_path(const DunklProcess& proc, const Vec& x0, const DomainSpec& D, const SimConfig& cfg,
                         std::uint64_t path) {
    PathRng rng(cfg.rng_seed, path);
    ExitSample s;
    Vec x = x0;
    double time = 0.0;
    if (!D.contains(x)) {
        s.exit_point = x;
        return s;
    }
    if (x.norm() == 0.0) {
        x = proc.sample_from_origin(cfg.h, rng);
        time = cfg.h;
        if (!D.contains(x)) {
            s.exit_time = time;
            s.exit_point = x;
            return s;
        }
    }
    while (true) {
        if (time >= cfg.max_time) {
            s.capped = true;
            break;
        }
        const auto inc = proc.continuous_increment(x, cfg.h, rng);
        if (!inc.ok) {
            s.capped = true;
            s.aborted = true;
            break;
        }
        time += inc.dt;
        if (!D.contains(inc.x)) {
            x = inc.x;
            break;
        }
        if (cfg.bridge_correction) {
            const double d0 = D.sphere_distance(x);
            const double d1 = D.sphere_distance(inc.x);
            if (rng.uniform() < std::exp(-d0 * d1 / inc.dt)) {
                x = D.project_to_sphere(inc.x);
                s.bridge_exit = true;
                break;
            }
        }
        Vec next = inc.x;
        if (proc.maybe_jump(x, next, inc.dt, rng) >= 0) {
            const double before = inc.x.norm();
            if (std::abs(next.norm() - before) > kRadiusTol * std::max(before, 1e-300)) ++s.radius_violations;
            if (++s.n_jumps >= cfg.jump_cap) {
                x = next;
                s.capped = true;
                break;
            }
        }
        x = next;
        if (!D.contains(x)) break;
    }
    s.exit_time = time;
    s.exit_point = x;
    return s;
}

}  // namespace

std::vector<ExitSample> simulate_exit(const RootSystem& sys, const Vec& x0, const DomainSpec& D, const SimConfig& cfg) {
    cfg.validate();
    const DunklProcess proc(sys, cfg.levy, cfg.wall_guard);
    check_start(sys, proc, x0, D);
    std::vector<ExitSample> out(cfg.n_paths);
    parallel_for(cfg.n_paths, worker_count(cfg.threads), [&](std::size_t i) { out[i] = run_exit_path(proc, x0, D, cfg, i); });
    return out;
}

ExitSummary summarize(const std::vector<ExitSample>& samples) {
    ExitSummary s;
    s.n = samples.size();
    if (s.n == 0) return s;
    double sum = 0.0, sum2 = 0.0;
    std::size_t capped = 0, bridge = 0;
    for (const auto& e : samples) {
        sum += e.exit_time;
        sum2 += e.exit_time * e.exit_time;
        capped += e.capped ? 1 : 0;
        bridge += e.bridge_exit ? 1 : 0;
        s.aborted += e.aborted ? 1 : 0;
        s.total_jumps += e.n_jumps;
        s.radius_violations += e.radius_violations;
    }
    const double n = static_cast<double>(s.n);
    s.mean_time = sum / n;
    const double var = s.n > 1 ? std::max(0.0, (sum2 - n * s.mean_time * s.mean_time) / (n - 1.0)) : 0.0;
    s.stderr_time = std::sqrt(var / n);
    s.capped_fraction = static_cast<double>(capped) / n;
    s.bridge_fraction = static_cast<double>(bridge) / n;
    return s;
}

double gamma_D_distance(const std::vector<GroupElement>& group, const Vec& z, const DomainSpec& D) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : group) best = std::min(best, D.distance_to_closure(g.matrix.transpose() * z));
    return best;
}

bool gamma_D(const std::vector<GroupElement>& group, const DomainSpec& D, const Vec& z, double tol) {
    if (D.contains(z)) return false;
    return gamma_D_distance(group, z, D) <= tol;
}

SupportReport estimate_harmonic_support(const RootSystem& sys, const Vec& x0, const DomainSpec& D, const SimConfig& cfg,
                                        double tol) {
    const auto group = enumerate_group(sys);
    const auto exits = simulate_exit(sys, x0, D, cfg);
    SupportReport rep;
    rep.tolerance = tol > 0.0 ? tol : 4.0 * std::sqrt(2.0 * cfg.h);
    rep.n = exits.size();
    for (const auto& e : exits) {
        const double dist = D.contains(e.exit_point) ? std::numeric_limits<double>::infinity()
                                                     : gamma_D_distance(group, e.exit_point, D);
        rep.worst_distance = std::max(rep.worst_distance, dist);
        if (!e.capped && dist <= rep.tolerance) ++rep.landed;
    }
    rep.fraction = static_cast<double>(rep.landed) / static_cast<double>(rep.n);
    rep.exits = summarize(exits);
    return rep;
}

// ---------------------------------------------------------------------------
// Radial law

double ks_gamma(std::vector<double> samples, double shape) {
    if (samples.empty()) fail(ErrorCode::InvalidArgument, "no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = boost::math::gamma_p(shape, std::max(samples[i], 0.0));
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - F, F - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_1pct(std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    return 1.62762 / (sn + 0.12 + 0.11 / sn);
}

RadialLawReport radial_law_sample(const RootSystem& sys, double t, const SimConfig& cfg) {
    cfg.validate();
    if (t < 100.0 * cfg.h) fail(ErrorCode::InvalidArgument, "radial law needs t >= 100 h");
    const DunklProcess proc(sys, cfg.levy, cfg.wall_guard);
    RadialLawReport rep;
    rep.t = t;
    rep.m = sys.effective_dimension();
    rep.radii.assign(cfg.n_paths, 0.0);
    std::vector<char> aborted(cfg.n_paths, 0);
    parallel_for(cfg.n_paths, worker_count(cfg.threads), [&](std::size_t i) {
        PathRng rng(cfg.rng_seed, i);
        Vec x = proc.sample_from_origin(cfg.h, rng);
        double time = cfg.h;
        while (time < t) {
            const auto st = step_process(proc, x, std::min(cfg.h, t - time), rng);
            if (!st.ok) {
                aborted[i] = 1;
                break;
            }
            x = st.state;
            time += st.dt;
        }
        rep.radii[i] = x.norm();
    });
    std::vector<double> scaled;
    scaled.reserve(cfg.n_paths);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < cfg.n_paths; ++i) {
        if (aborted[i]) {
            ++rep.aborted;
            continue;
        }
        const double s = rep.radii[i] * rep.radii[i] / (4.0 * t);
        scaled.push_back(s);
        sum += s;
        sum2 += s * s;
    }
    if (scaled.empty()) fail(ErrorCode::NoConvergence, "every radial-law path was aborted");
    const double n = static_cast<double>(scaled.size());
    rep.mean_scaled = sum / n;
    rep.stderr_scaled = std::sqrt(std::max(0.0, (sum2 - n * rep.mean_scaled * rep.mean_scaled) / (n - 1.0)) / n);
    rep.ks_statistic = ks_gamma(std::move(scaled), 0.5 * rep.m);
    rep.ks_critical_1pct = ks_critical_1pct(static_cast<std::size_t>(n));
    return rep;
}

// ---------------------------------------------------------------------------
// Bessel cross-check

std::vector<double> simulate_bessel_exit(double m, double r, const SimConfig& cfg) {
    cfg.validate();
    if (!(m > 1.0)) fail(ErrorCode::MTooSmall, "Bessel dimension must exceed 1");
    if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
    std::vector<double> out(cfg.n_paths, 0.0);
    parallel_for(cfg.n_paths, worker_count(cfg.threads), [&](std::size_t i) {
        // Streams distinct from the d-dimensional simulation of the same seed.
        PathRng rng(cfg.rng_seed ^ 0x9e3779b97f4a7c15ULL, i);
        double rho = std::sqrt(4.0 * cfg.h * rng.gamma(0.5 * m));
        double time = cfg.h;
        while (rho < r && time < cfg.max_time) {
            const double b = (m - 1.0) / rho;
            double hp = std::min(cfg.h, 0.5 * rho / b);
            double next = -1.0;
            for (int halving = 0; halving <= kMaxHalvings && next < 0.0; ++halving, hp *= 0.5) {
                for (int attempt = 0; attempt < 2; ++attempt) {
                    const double cand = rho + b * hp + std::sqrt(2.0 * hp) * rng.normal();
                    if (cand >= cfg.wall_guard) {
                        next = cand;
                        break;
                    }
                }
                if (next >= 0.0) break;
            }
            if (next < 0.0) break;
            time += hp;
            if (next >= r) break;
            if (cfg.bridge_correction && rng.uniform() < std::exp(-(r - rho) * (r - next) / hp)) break;
            rho = next;
        }
        out[i] = time;
    });
    return out;
}

}  // namespace dunkl
