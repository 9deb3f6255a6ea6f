#include "dunkl/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "dunkl/error.hpp"

namespace dunkl::io {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

double number(const std::string& s, const std::string& context) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
        fail(ErrorCode::InvalidArgument, "bad number '" + s + "' in " + context);
    }
    return v;
}

std::vector<double> numbers(const std::string& s, const std::string& context) {
    std::vector<double> out;
    for (const auto& part : split(s, ',')) out.push_back(number(part, context));
    return out;
}

int integer(const std::string& s, const std::string& context) {
    int v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end) {
        fail(ErrorCode::InvalidArgument, "bad integer '" + s + "' in " + context);
    }
    return v;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// JSON has no infinities; encode them as null.
json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

}  // namespace

RootSystem parse_system(const std::string& text) {
    const auto parts = split(text, ':');
    const std::string& head = parts[0];
    RootSystemParams p;
    if (head == "dihedral") {
        if (parts.size() != 3) fail(ErrorCode::InvalidArgument, "expected dihedral:n:k1[,k2], got '" + text + "'");
        p.order = integer(parts[1], text);
        p.k = numbers(parts[2], text);
        return RootSystem::build(RootFamily::Dihedral, p);
    }
    if (parts.size() != 2) fail(ErrorCode::InvalidArgument, "malformed root system '" + text + "'");
    if (head == "b2") {
        p.k = numbers(parts[1], text);
        return RootSystem::build(RootFamily::BRank2, p);
    }
    // a1, a1xa1, a1xa1xa1, ...
    const auto factors = split(head, 'x');
    for (const auto& f : factors)
        if (f != "a1") fail(ErrorCode::InvalidArgument, "unknown root system '" + head + "'");
    p.dimension = static_cast<int>(factors.size());
    p.k = numbers(parts[1], text);
    return RootSystem::build(RootFamily::A1Product, p);
}

RootSystem system_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorCode::ConfigError, "root system document must be a JSON object");
    static const std::set<std::string> allowed{"family", "d", "order", "roots", "k"};
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) fail(ErrorCode::ConfigError, "unknown root system field '" + key + "'");
    if (!j.contains("family") || !j.contains("k")) fail(ErrorCode::ConfigError, "root system needs 'family' and 'k'");

    try {
        RootSystemParams p;
        if (j.contains("d")) p.dimension = j.at("d").get<int>();
        if (j.contains("order")) p.order = j.at("order").get<int>();
        const auto& k = j.at("k");
        p.k = k.is_array() ? k.get<std::vector<double>>() : std::vector<double>{k.get<double>()};
        if (j.contains("roots")) {
            for (const auto& r : j.at("roots")) {
                const auto c = r.get<std::vector<double>>();
                Vec v(static_cast<Eigen::Index>(c.size()));
                for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = c[i];
                p.roots.push_back(v);
            }
        }
        return RootSystem::build(root_family_from_string(j.at("family").get<std::string>()), p);
    } catch (const json::exception& e) {
        fail(ErrorCode::ConfigError, std::string("root system document: ") + e.what());
    }
}

json system_to_json(const RootSystem& sys) {
    json roots = json::array();
    for (const auto& a : sys.positive_roots()) {
        json r = json::array();
        for (Eigen::Index i = 0; i < a.size(); ++i) r.push_back(a[i]);
        roots.push_back(r);
    }
    const auto k = sys.multiplicities();
    return {{"family", to_string(sys.family())},
            {"d", sys.dimension()},
            {"positive_roots", roots},
            {"k", std::vector<double>(k.begin(), k.end())},
            {"m", sys.effective_dimension()}};
}

std::string config_hash(const json& j) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json to_json(const BlowupInfo& b) {
    return {{"status", to_string(b.status)},
            {"radius", num(b.radius)},
            {"bracket", {num(b.bracket_low), num(b.bracket_high)}},
            {"horizon", num(b.horizon)}};
}

json to_json(const RadialSolution& sol, bool with_profile) {
    json j{{"seed", sol.seed}, {"stop_radius", num(sol.stop_radius)}, {"stop_reason", to_string(sol.stop_reason)},
           {"points", sol.grid.size()}};
    if (with_profile) {
        json g = json::array(), v = json::array(), d = json::array();
        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            g.push_back(num(sol.grid[i]));
            v.push_back(num(sol.values[i]));
            d.push_back(num(sol.derivatives[i]));
        }
        j["grid"] = std::move(g);
        j["values"] = std::move(v);
        j["derivatives"] = std::move(d);
    }
    j["blowup"] = sol.blowup ? to_json(*sol.blowup) : json(nullptr);
    return j;
}

json to_json(const KOIntegral& k) {
    return {{"divergent", k.divergent},
            {"value", num(k.value)},
            {"cutoff", num(k.cutoff)},
            {"growth_exponent", num(k.growth_exponent)},
            {"tail_value", num(k.tail_value)},
            {"tail_bound", num(k.tail_bound)}};
}

json to_json(const KOReport& r) {
    json j{{"a", r.a},
           {"classification", to_string(r.classification)},
           {"integral_from_zero", to_json(r.integral_from_zero)},
           {"integral_from_a", to_json(r.integral_from_a)}};
    if (r.sandwich) {
        j["sandwich"] = {{"lower", num(r.sandwich->lower)},
                         {"sqrt2_Ra", num(r.sandwich->sqrt2_Ra)},
                         {"upper", num(r.sandwich->upper)},
                         {"ok", r.sandwich->ok}};
    }
    return j;
}

json to_json(const ExitSummary& s) {
    return {{"paths", s.n},
            {"mean_tau", s.mean_time},
            {"stderr_tau", s.stderr_time},
            {"capped_fraction", s.capped_fraction},
            {"aborted", s.aborted},
            {"total_jumps", s.total_jumps},
            {"radius_violations", s.radius_violations},
            {"bridge_fraction", s.bridge_fraction}};
}

json to_json(const SupportReport& s) {
    return {{"paths", s.n},
            {"landed", s.landed},
            {"support_fraction", s.fraction},
            {"worst_distance", num(s.worst_distance)},
            {"tolerance", s.tolerance},
            {"exits", to_json(s.exits)}};
}

json to_json(const RadialLawReport& r) {
    return {{"paths", r.radii.size()},
            {"t", r.t},
            {"m", r.m},
            {"mean_scaled", r.mean_scaled},
            {"target_mean_scaled", r.m / 2.0},
            {"stderr_scaled", r.stderr_scaled},
            {"ks_statistic", r.ks_statistic},
            {"ks_critical_1pct", r.ks_critical_1pct},
            {"aborted", r.aborted}};
}

json to_json(const VerificationReport& v) {
    return {{"ode_residual", num(v.ode_residual)},
            {"fixedpoint_residual", num(v.fixedpoint_residual)},
            {"boundary_error", num(v.boundary_error)},
            {"bounds_ok", v.bounds_ok}};
}

void write_profile_csv(std::ostream& out, const RadialSolution& sol) {
    out << "r,u,u_prime\n";
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        out << fmt(sol.grid[i]) << ',' << fmt(sol.values[i]) << ',' << fmt(sol.derivatives[i]) << '\n';
}

void write_exit_csv(std::ostream& out, const std::vector<ExitSample>& samples, int dimension) {
    out << "path_id,tau";
    for (int i = 1; i <= dimension; ++i) out << ",x" << i;
    out << ",n_jumps,capped\n";
    for (std::size_t p = 0; p < samples.size(); ++p) {
        const auto& e = samples[p];
        out << p << ',' << fmt(e.exit_time);
        for (int i = 0; i < dimension; ++i) out << ',' << (i < e.exit_point.size() ? fmt(e.exit_point[i]) : "nan");
        out << ',' << e.n_jumps << ',' << (e.capped ? 1 : 0) << '\n';
    }
}

}  // namespace dunkl::io
