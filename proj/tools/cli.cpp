#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "dunkl/error.hpp"
#include "dunkl/io.hpp"
#include "dunkl/mc_simulator.hpp"
#include "dunkl/radial_engine.hpp"
#include "dunkl/semilinear_solver.hpp"

namespace dunkl::cli {

namespace {

using FT = FieldType;

const json kRequired = nullptr;

const std::map<std::string, std::vector<Field>>& table() {
    static const std::map<std::string, std::vector<Field>> t{
        {"ko",
         {{"phi", FT::String, kRequired, "nonlinearity: power:c,p | linear:c | expm1:c | poly:c1,c2,..."},
          {"a", FT::Number, 1.0, "seed a for the integral from a (sandwich bounds)"},
          {"m", FT::Number, 3.0, "effective dimension used for the entire-solution verdict"},
          {"csv", FT::String, kRequired, "write a one-row CSV summary here", true},
          {"json", FT::String, kRequired, "also write the JSON document here", true}}},
        {"blowup",
         {{"phi", FT::String, kRequired, "nonlinearity"},
          {"m", FT::Number, kRequired, "effective dimension m > 2"},
          {"radius", FT::Number, kRequired, "target blow-up radius R_b (default 1 unless --seed or --seed-sweep)", true},
          {"seed", FT::Number, kRequired, "integrate from u(0) = seed instead of targeting a radius", true},
          {"seed_sweep", FT::NumberList, kRequired, "comma separated seeds; prints the R_a table", true},
          {"csv", FT::String, kRequired, "write the profile (r,u,u_prime) here", true},
          {"json", FT::String, kRequired, "also write the JSON document here", true}}},
        {"dirichlet",
         {{"phi", FT::String, kRequired, "nonlinearity"},
          {"m", FT::Number, kRequired, "effective dimension m > 2"},
          {"c", FT::Number, kRequired, "constant boundary value c >= 0"},
          {"radius", FT::Number, 1.0, "ball radius"},
          {"method", FT::String, "both", "picard | shooting | both"},
          {"points", FT::Integer, 401, "uniform grid points"},
          {"csv", FT::String, kRequired, "write the profile (r,u,u_prime) here", true},
          {"json", FT::String, kRequired, "also write the JSON document here", true}}},
        {"simulate",
         {{"mode", FT::String, kRequired, "exit | support | radial-law"},
          {"system", FT::String, kRequired, "a1:k | a1xa1:k | dihedral:n:k1[,k2] | b2:ks,kl", true},
          {"system_file", FT::String, kRequired, "JSON root system document", true},
          {"ball", FT::Number, 1.0, "radius of the centered ball when --domain is absent"},
          {"domain", FT::String, kRequired, "centered_ball:r | offset_ball:r,c1,.. | half_ball:r,n1,..", true},
          {"x0", FT::NumberList, kRequired, "start point (default: origin, or the center of an offset ball)", true},
          {"paths", FT::Integer, 10000, "number of paths"},
          {"h", FT::Number, 1e-4, "time step"},
          {"seed", FT::Integer, 0, "RNG seed"},
          {"max_time", FT::Number, 100.0, "time horizon per path"},
          {"levy", FT::String, "generator", "jump rate convention: generator | printed_lvk"},
          {"no_bridge", FT::Bool, false, "disable the Brownian-bridge exit test"},
          {"t", FT::Number, 1.0, "time for radial-law"},
          {"threads", FT::Integer, 0, "worker threads (0: DUNKL_LAB_THREADS or all cores)"},
          {"csv", FT::String, kRequired, "write per-path rows here", true},
          {"json", FT::String, kRequired, "also write the JSON document here", true}}},
        {"verify",
         {{"quick", FT::Bool, false, "library invariants without Monte Carlo (default)"},
          {"full", FT::Bool, false, "include the Monte Carlo invariants"},
          {"paths", FT::Integer, 10000, "paths per Monte Carlo invariant"},
          {"h", FT::Number, 1e-4, "Monte Carlo time step"},
          {"seed", FT::Integer, 7, "Monte Carlo seed"},
          {"threads", FT::Integer, 0, "worker threads"},
          {"inject_failure", FT::StringList, kRequired, "force these invariants to fail (tripwire test)", true},
          {"list", FT::Bool, false, "list invariant names and exit"},
          {"json", FT::String, kRequired, "also write the JSON document here", true}}},
    };
    return t;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

double to_number(const std::string& s, const std::string& key) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        fail(ErrorCode::ConfigError, "--" + key + ": '" + s + "' is not a number");
    return v;
}

bool type_ok(FT type, const json& v) {
    switch (type) {
        case FT::Number: return v.is_number();
        case FT::Integer: return v.is_number_integer();
        case FT::String: return v.is_string();
        case FT::Bool: return v.is_boolean();
        case FT::NumberList:
            return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); });
        case FT::StringList:
            return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string(); });
    }
    return false;
}

std::string flag_name(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

// Output paths do not change the computation, so they stay out of the hash.
json hashed_part(const json& config) {
    json j = config;
    j.erase("csv");
    j.erase("json");
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::ConfigError, "cannot write '" + path + "'");
    out << text;
}

Outcome envelope(const std::string& command, const json& config, json units, json result) {
    Outcome o;
    o.doc = {{"command", command},
             {"config", config},
             {"config_hash", io::config_hash(hashed_part(config))},
             {"units", std::move(units)},
             {"result", std::move(result)}};
    return o;
}

json profile_units() {
    return {{"r", "length (same units as the ball radius)"}, {"u", "solution value"}, {"u_prime", "solution value per length"}};
}

Outcome cmd_ko(const json& cfg) {
    const Phi phi = Phi::parse(cfg.at("phi").get<std::string>());
    const double a = cfg.at("a").get<double>();
    const double m = cfg.at("m").get<double>();
    const KOReport rep = ko_report(phi, a);
    json result = io::to_json(rep);
    result["phi"] = phi.to_text();
    result["entire_solution"] = to_string(classify_entire_solution(m, phi));
    if (cfg.contains("csv")) {
        std::ostringstream s;
        s << "phi,a,classification,integral_from_zero,integral_from_a\n"
          << '"' << phi.to_text() << "\"," << a << ',' << to_string(rep.classification) << ','
          << rep.integral_from_zero.value << ',' << rep.integral_from_a.value << '\n';
        write_text(cfg.at("csv"), s.str());
    }
    return envelope("ko", cfg,
                    {{"integral", "length: int dt / sqrt(int phi), with u measured in solution units"},
                     {"a", "solution value"}},
                    result);
}

Outcome cmd_blowup(const json& cfg) {
    const Phi phi = Phi::parse(cfg.at("phi").get<std::string>());
    const double m = cfg.at("m").get<double>();
    const int modes = int(cfg.contains("radius")) + int(cfg.contains("seed")) + int(cfg.contains("seed_sweep"));
    if (modes > 1) fail(ErrorCode::ConfigError, "use only one of --radius, --seed, --seed-sweep");

    const KOReport ko = ko_report(phi, 1.0);
    if (ko.classification == KOClass::Holds) {
        Outcome o = envelope("blowup", cfg, profile_units(), {{"ko", io::to_json(ko)}, {"blowup", nullptr}});
        o.exit_code = kEmpty;
        o.message = "no boundary blow-up: KO holds";
        return o;
    }

    if (cfg.contains("seed_sweep")) {
        json rows = json::array();
        bool monotone = true;
        double prev_a = -1.0, prev_r = 0.0;
        for (double a : cfg.at("seed_sweep").get<std::vector<double>>()) {
            const BlowupInfo b = blowup_radius(m, phi, a);
            if (prev_a >= 0.0 && ((a > prev_a && b.radius > prev_r) || (a < prev_a && b.radius < prev_r))) monotone = false;
            prev_a = a;
            prev_r = b.radius;
            rows.push_back({{"a", a}, {"R", b.radius}, {"bracket", {b.bracket_low, b.bracket_high}}});
        }
        if (cfg.contains("csv")) {
            std::ostringstream s;
            s.precision(17);
            s << "a,R,R_low,R_high\n";
            for (const auto& r : rows) s << r["a"] << ',' << r["R"] << ',' << r["bracket"][0] << ',' << r["bracket"][1] << '\n';
            write_text(cfg.at("csv"), s.str());
        }
        Outcome o = envelope("blowup", cfg, {{"a", "solution value u(0)"}, {"R", "length"}},
                             {{"sweep", rows}, {"monotone_decreasing", monotone}});
        if (!monotone) {
            o.exit_code = kAcceptance;
            o.message = "blow-up radius is not decreasing in the seed";
        }
        return o;
    }

    RadialSolution sol;
    json search = nullptr;
    if (cfg.contains("seed")) {
        sol = solve_to_blowup(m, phi, cfg.at("seed").get<double>());
    } else {
        const double target = cfg.contains("radius") ? cfg.at("radius").get<double>() : 1.0;
        const SeedSearch s = find_seed_for_radius(m, phi, target);
        sol = solve_blowup_problem(m, phi, target);
        search = {{"target_radius", target}, {"seed", s.seed}, {"bisection_steps", s.history.size()}};
    }
    json result = io::to_json(sol);
    result["ko"] = io::to_json(ko_report(phi, sol.seed));
    result["seed_search"] = search;
    result["ode_residual_relative"] = radial_ode_residual(m, phi, sol, true);
    if (cfg.contains("csv")) {
        std::ostringstream s;
        io::write_profile_csv(s, sol);
        write_text(cfg.at("csv"), s.str());
    }
    return envelope("blowup", cfg, profile_units(), result);
}

Outcome cmd_dirichlet(const json& cfg) {
    const DirichletProblem prob{cfg.at("m").get<double>(), Phi::parse(cfg.at("phi").get<std::string>()),
                                cfg.at("radius").get<double>(), cfg.at("c").get<double>()};
    prob.validate();
    const std::string method = cfg.at("method");
    if (method != "picard" && method != "shooting" && method != "both")
        fail(ErrorCode::ConfigError, "--method must be picard, shooting or both");
    const auto points = cfg.at("points").get<std::int64_t>();
    if (points < 3) fail(ErrorCode::ConfigError, "--points must be at least 3");

    json result;
    RadialSolution main;
    if (method != "shooting") {
        PicardControls pc;
        pc.points = static_cast<std::size_t>(points);
        const PicardResult pr = picard_solve(prob, pc);
        main = pr.solution;
        result["picard"] = {{"iterations", pr.iterations}, {"omega", pr.omega}, {"last_update", pr.last_update},
                            {"verification", io::to_json(verify_solution(prob, pr.solution))}};
    }
    if (method != "picard") {
        const RadialSolution sh =
            solve_radial_dirichlet_shooting(prob.m, prob.phi, prob.r_ball, prob.c, 1e-12, static_cast<std::size_t>(points));
        result["shooting"] = {{"verification", io::to_json(verify_solution(prob, sh))}};
        if (method == "shooting") main = sh;
        else result["disagreement"] = sup_distance(main, sh);
    }
    result["solution"] = io::to_json(main);
    result["method"] = method;
    if (cfg.contains("csv")) {
        std::ostringstream s;
        io::write_profile_csv(s, main);
        write_text(cfg.at("csv"), s.str());
    }
    Outcome o = envelope("dirichlet", cfg, profile_units(), result);
    if (method == "both" && result["disagreement"].get<double>() > 1e-5) {
        o.exit_code = kAcceptance;
        o.message = "picard and shooting disagree by more than 1e-5";
    }
    return o;
}

RootSystem system_of(const json& cfg) {
    if (cfg.contains("system") == cfg.contains("system_file"))
        fail(ErrorCode::ConfigError, "give exactly one of --system and --system-file");
    if (cfg.contains("system")) return io::parse_system(cfg.at("system"));
    std::ifstream in(cfg.at("system_file").get<std::string>());
    if (!in) fail(ErrorCode::ConfigError, "cannot read " + cfg.at("system_file").get<std::string>());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        fail(ErrorCode::ConfigError, std::string("system file: ") + e.what());
    }
    return io::system_from_json(doc);
}

Outcome cmd_simulate(const json& cfg) {
    const std::string mode = cfg.at("mode");
    if (mode != "exit" && mode != "support" && mode != "radial-law")
        fail(ErrorCode::ConfigError, "simulate mode must be exit, support or radial-law");
    const RootSystem sys = system_of(cfg);
    const int d = sys.dimension();

    SimConfig sc;
    const auto paths = cfg.at("paths").get<std::int64_t>();
    const auto seed = cfg.at("seed").get<std::int64_t>();
    const auto threads = cfg.at("threads").get<std::int64_t>();
    if (paths < 1 || seed < 0 || threads < 0) fail(ErrorCode::ConfigError, "paths must be >= 1; seed, threads >= 0");
    sc.n_paths = static_cast<std::size_t>(paths);
    sc.rng_seed = static_cast<std::uint64_t>(seed);
    sc.threads = static_cast<unsigned>(threads);
    sc.h = cfg.at("h");
    sc.max_time = cfg.at("max_time");
    sc.levy = levy_rate_convention_from_string(cfg.at("levy"));
    sc.bridge_correction = !cfg.at("no_bridge").get<bool>();
    sc.validate();

    json result{{"system", io::system_to_json(sys)}, {"mode", mode}};
    json units{{"tau", "time; the generator is Delta_k itself (Euler noise sqrt(2h))"},
               {"x", "length"},
               {"h", "time"}};

    if (mode == "radial-law") {
        const RadialLawReport rep = radial_law_sample(sys, cfg.at("t"), sc);
        result["radial_law"] = io::to_json(rep);
        units["mean_scaled"] = "dimensionless |X_t|^2 / (4t)";
        if (cfg.contains("csv")) {
            std::ostringstream s;
            s.precision(17);
            s << "path_id,radius\n";
            for (std::size_t i = 0; i < rep.radii.size(); ++i) s << i << ',' << rep.radii[i] << '\n';
            write_text(cfg.at("csv"), s.str());
        }
        return envelope("simulate", cfg, units, result);
    }

    const DomainSpec D = cfg.contains("domain")
                             ? DomainSpec::parse(cfg.at("domain"), d)
                             : DomainSpec::centered_ball(d, cfg.at("ball").get<double>());
    Vec x0 = Vec::Zero(d);
    if (cfg.contains("x0")) {
        const auto v = cfg.at("x0").get<std::vector<double>>();
        if (static_cast<int>(v.size()) != d) fail(ErrorCode::ConfigError, "--x0 needs " + std::to_string(d) + " coordinates");
        for (int i = 0; i < d; ++i) x0[i] = v[static_cast<std::size_t>(i)];
    } else if (D.kind() == DomainSpec::Kind::OffsetBall) {
        x0 = D.center();
    } else if (D.kind() == DomainSpec::Kind::HalfBall) {
        fail(ErrorCode::ConfigError, "a half-ball needs an explicit --x0");
    }
    result["domain"] = D.to_text();
    result["x0"] = std::vector<double>(x0.data(), x0.data() + d);

    std::vector<ExitSample> samples;
    if (mode == "exit") {
        samples = simulate_exit(sys, x0, D, sc);
        const ExitSummary s = summarize(samples);
        result["exits"] = io::to_json(s);
        if (D.kind() == DomainSpec::Kind::CenteredBall) {
            const double target = (D.radius() * D.radius() - x0.squaredNorm()) / (2.0 * sys.effective_dimension());
            const double band = 3.0 * s.stderr_time + 5.0 * sc.h;
            result["closed_form_mean_tau"] = target;
            result["band"] = band;
            result["within_band"] = std::abs(s.mean_time - target) <= band;
        }
    } else {
        const SupportReport rep = estimate_harmonic_support(sys, x0, D, sc);
        result["support"] = io::to_json(rep);
        if (cfg.contains("csv")) samples = simulate_exit(sys, x0, D, sc);
    }
    if (cfg.contains("csv")) {
        std::ostringstream s;
        io::write_exit_csv(s, samples, d);
        write_text(cfg.at("csv"), s.str());
    }
    return envelope("simulate", cfg, units, result);
}

Outcome cmd_verify(const json& cfg, std::ostream& log) {
    auto invariants = verify::library_invariants();
    for (auto& inv : cli_invariants()) invariants.push_back(std::move(inv));

    if (cfg.at("list").get<bool>()) {
        json names = json::array();
        for (const auto& inv : invariants) {
            names.push_back({{"name", inv.name}, {"monte_carlo", inv.monte_carlo}});
            log << inv.name << (inv.monte_carlo ? "  [monte carlo]" : "") << '\n';
        }
        return envelope("verify", cfg, json::object(), {{"invariants", names}});
    }
    if (cfg.at("quick").get<bool>() && cfg.at("full").get<bool>())
        fail(ErrorCode::ConfigError, "--quick and --full are exclusive");

    verify::SuiteOptions opt;
    opt.full = cfg.at("full");
    const auto paths = cfg.at("paths").get<std::int64_t>();
    const auto seed = cfg.at("seed").get<std::int64_t>();
    const auto threads = cfg.at("threads").get<std::int64_t>();
    if (paths < 100 || seed < 0 || threads < 0) fail(ErrorCode::ConfigError, "paths must be >= 100; seed, threads >= 0");
    opt.mc.paths = static_cast<std::size_t>(paths);
    opt.mc.seed = static_cast<std::uint64_t>(seed);
    opt.mc.threads = static_cast<unsigned>(threads);
    opt.mc.h = cfg.at("h");
    if (cfg.contains("inject_failure")) opt.inject_failures = cfg.at("inject_failure").get<std::vector<std::string>>();

    json checks = json::array();
    std::vector<std::string> failed;
    verify::run_suite(invariants, opt, [&](const verify::CheckResult& r) {
        log << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << std::fixed << std::setprecision(2) << r.seconds
            << " s) " << std::defaultfloat << r.detail << std::endl;
        checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
        if (!r.passed) failed.push_back(r.name);
    });
    Outcome o = envelope("verify", cfg, {{"seconds", "wall-clock seconds"}},
                         {{"mode", opt.full ? "full" : "quick"}, {"passed", failed.empty()}, {"failed", failed},
                          {"checks", checks}});
    if (!failed.empty()) {
        o.exit_code = kAcceptance;
        o.message = "violated invariants:";
        for (const auto& n : failed) o.message += " " + n;
    }
    return o;
}

}  // namespace

std::vector<std::string> commands() {
    std::vector<std::string> out;
    for (const auto& [name, _] : table()) out.push_back(name);
    return out;
}

const std::vector<Field>& fields(const std::string& command) {
    const auto it = table().find(command);
    if (it == table().end()) fail(ErrorCode::ConfigError, "unknown command '" + command + "'");
    return it->second;
}

json parse_flag(const Field& f, const std::string& text) {
    switch (f.type) {
        case FT::Number: return to_number(text, flag_name(f.key));
        case FT::Integer: {
            std::int64_t v = 0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
                fail(ErrorCode::ConfigError, "--" + flag_name(f.key) + ": '" + text + "' is not an integer");
            return v;
        }
        case FT::String: return text;
        case FT::Bool:
            if (text == "true" || text == "1") return true;
            if (text == "false" || text == "0") return false;
            fail(ErrorCode::ConfigError, "--" + flag_name(f.key) + ": expected true or false");
        case FT::NumberList: {
            json arr = json::array();
            for (const auto& part : split(text)) arr.push_back(to_number(part, flag_name(f.key)));
            return arr;
        }
        case FT::StringList: {
            json arr = json::array();
            for (const auto& part : split(text)) arr.push_back(part);
            return arr;
        }
    }
    return nullptr;
}

json merge_config(const std::string& command, const json& file, const json& flags) {
    const auto& fs = fields(command);
    if (!file.is_null() && !file.is_object()) fail(ErrorCode::ConfigError, "config document must be a JSON object");
    auto find = [&](const std::string& key) -> const Field* {
        for (const auto& f : fs)
            if (f.key == key) return &f;
        return nullptr;
    };
    json out = json::object();
    if (file.is_object()) {
        for (const auto& [key, value] : file.items()) {
            const Field* f = find(key);
            if (!f) fail(ErrorCode::ConfigError, "unknown field '" + key + "' for " + command);
            json v = value;
            // Lists may also be written as comma separated strings.
            if ((f->type == FT::NumberList || f->type == FT::StringList) && v.is_string()) v = parse_flag(*f, v);
            if (!type_ok(f->type, v)) fail(ErrorCode::ConfigError, "field '" + key + "' has the wrong type");
            out[key] = v;
        }
    }
    for (const auto& [key, value] : flags.items()) {
        if (!find(key)) fail(ErrorCode::ConfigError, "unknown option '" + key + "' for " + command);
        out[key] = value;
    }
    for (const auto& f : fs) {
        if (out.contains(f.key)) continue;
        if (!f.default_value.is_null()) out[f.key] = f.default_value;
        else if (!f.optional) fail(ErrorCode::ConfigError, "missing required --" + flag_name(f.key));
    }
    return out;
}

Outcome run(const std::string& command, const json& config, std::ostream& log) {
    Outcome o;
    if (command == "ko") o = cmd_ko(config);
    else if (command == "blowup") o = cmd_blowup(config);
    else if (command == "dirichlet") o = cmd_dirichlet(config);
    else if (command == "simulate") o = cmd_simulate(config);
    else if (command == "verify") o = cmd_verify(config, log);
    else fail(ErrorCode::ConfigError, "unknown command '" + command + "'");
    if (config.contains("json")) write_text(config.at("json"), o.doc.dump(2) + "\n");
    return o;
}

std::vector<verify::Invariant> cli_invariants() {
    struct Sample {
        const char* command;
        json flags;
    };
    static const std::vector<Sample> samples{
        {"ko", {{"phi", "power:1,2"}}},
        {"blowup", {{"phi", "power:1,2"}, {"m", 4.0}, {"radius", 1.0}}},
        {"dirichlet", {{"phi", "expm1:1"}, {"m", 3.0}, {"c", 1.0}, {"points", 101}}},
        {"simulate", {{"mode", "exit"}, {"system", "a1xa1:0.75"}, {"paths", 300}, {"seed", 3}}},
        {"simulate", {{"mode", "support"}, {"system", "a1xa1:0.75"}, {"domain", "offset_ball:0.25,0.6,0.3"}, {"paths", 200}}},
    };
    auto run_sample = [](const Sample& s) {
        std::ostringstream sink;
        return run(s.command, merge_config(s.command, nullptr, s.flags), sink);
    };
    std::vector<verify::Invariant> out;
    out.push_back({"cli_harness.determinism", false, [=](const verify::McOptions&) {
                       verify::CheckResult r;
                       r.passed = true;
                       for (const auto& s : samples) {
                           if (run_sample(s).doc.dump() != run_sample(s).doc.dump()) {
                               r.passed = false;
                               r.detail += std::string("FAIL ") + s.command + " output differs between runs; ";
                           }
                       }
                       r.detail += "commands=" + std::to_string(samples.size());
                       return r;
                   }});
    out.push_back({"cli_harness.output_metadata", false, [=](const verify::McOptions&) {
                       verify::CheckResult r;
                       r.passed = true;
                       std::vector<std::string> hashes;
                       for (const auto& s : samples) {
                           const json doc = run_sample(s).doc;
                           const bool ok = doc.contains("units") && doc.contains("config_hash") &&
                                           doc["config_hash"].get<std::string>().size() == 16;
                           if (!ok) {
                               r.passed = false;
                               r.detail += std::string("FAIL ") + s.command + " lacks units or config_hash; ";
                           } else {
                               hashes.push_back(doc["config_hash"]);
                           }
                       }
                       std::sort(hashes.begin(), hashes.end());
                       if (std::adjacent_find(hashes.begin(), hashes.end()) != hashes.end()) {
                           r.passed = false;
                           r.detail += "FAIL distinct configs share a hash; ";
                       }
                       r.detail += "documents=" + std::to_string(samples.size());
                       return r;
                   }});
    return out;
}

}  // namespace dunkl::cli
