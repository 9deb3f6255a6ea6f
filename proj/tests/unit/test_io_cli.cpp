#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dunkl/error.hpp"
#include "dunkl/io.hpp"

using namespace dunkl;
using nlohmann::json;

TEST_CASE("system grammar") {
    CHECK(io::parse_system("a1:1").dimension() == 1);
    CHECK(io::parse_system("a1xa1xa1:0.5").dimension() == 3);
    CHECK(io::parse_system("dihedral:5:1").size() == 5);
    CHECK(io::parse_system("b2:0.5,1").effective_dimension() == doctest::Approx(8.0));
    for (const char* bad : {"", "a2:1", "dihedral:x:1", "b2", "a1xa1:", "a1xb1:1"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(io::parse_system(bad), Error);
    }
}

TEST_CASE("system JSON round trip") {
    const auto sys = io::parse_system("dihedral:4:0.5,1");
    const json j = io::system_to_json(sys);
    CHECK(j.at("m").get<double>() == doctest::Approx(8.0));
    const auto back = io::system_from_json({{"family", "dihedral"}, {"order", 4}, {"k", {0.5, 1.0}}});
    CHECK(back.effective_dimension() == doctest::Approx(sys.effective_dimension()));
    const auto custom = io::system_from_json({{"family", "custom"}, {"roots", {{1.0, 1.0}}}, {"k", {1.0}}});
    CHECK(custom.effective_dimension() == doctest::Approx(4.0));
    try {
        io::system_from_json({{"family", "dihedral"}, {"order", 4}, {"k", {1.0}}, {"colour", "red"}});
        FAIL("unknown key accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigError);
    }
}

TEST_CASE("config hash is stable and key-order independent") {
    const json a = json::parse(R"({"phi":"power:1,2","m":4})");
    const json b = json::parse(R"({"m":4,"phi":"power:1,2"})");
    CHECK(io::config_hash(a) == io::config_hash(b));
    CHECK(io::config_hash(a).size() == 16);
    CHECK(io::config_hash(a) != io::config_hash(json::parse(R"({"m":5,"phi":"power:1,2"})")));
}

TEST_CASE("CSV headers") {
    RadialSolution sol;
    sol.grid = {0.0, 1.0};
    sol.values = {1.0, 2.0};
    sol.derivatives = {0.0, 0.5};
    std::ostringstream out;
    io::write_profile_csv(out, sol);
    CHECK(out.str().rfind("r,u,u_prime\n", 0) == 0);
    CHECK(out.str().find("\n1,2,0.5\n") != std::string::npos);

    ExitSample s;
    s.exit_time = 0.25;
    s.exit_point = Vec::Zero(2);
    std::ostringstream e;
    io::write_exit_csv(e, {s}, 2);
    CHECK(e.str().rfind("path_id,tau,x1,x2,n_jumps,capped\n", 0) == 0);
}

TEST_CASE("non-finite numbers become null") {
    KOIntegral k;
    k.divergent = true;
    k.value = std::numeric_limits<double>::infinity();
    CHECK(io::to_json(k).at("value").is_null());
}

TEST_CASE("config merging") {
    const json merged = cli::merge_config("dirichlet", json{{"phi", "power:1,2"}, {"m", 4}, {"c", 3}}, json{{"c", 1.0}});
    CHECK(merged.at("c").get<double>() == 1.0);
    CHECK(merged.at("points").get<int>() == 401);
    CHECK(merged.at("method") == "both");
    CHECK_FALSE(merged.contains("csv"));

    CHECK_THROWS_AS(cli::merge_config("dirichlet", json{{"phi", "linear:1"}, {"m", 4}, {"c", 1}, {"bogus", 1}}, json::object()),
                    Error);
    CHECK_THROWS_AS(cli::merge_config("dirichlet", json{{"phi", "linear:1"}, {"m", 4}}, json::object()), Error);
    CHECK_THROWS_AS(cli::merge_config("dirichlet", json{{"phi", "linear:1"}, {"m", "four"}, {"c", 1}}, json::object()),
                    Error);
    const json list = cli::merge_config("blowup", json{{"phi", "power:1,2"}, {"m", 4}, {"seed_sweep", "0.5,1,2"}}, json::object());
    CHECK(list.at("seed_sweep").size() == 3);
}

TEST_CASE("flag parsing") {
    const auto& f = cli::fields("simulate");
    const auto find = [&](const std::string& k) {
        for (const auto& x : f)
            if (x.key == k) return x;
        FAIL("missing field " << k);
        return f.front();
    };
    CHECK(cli::parse_flag(find("paths"), "500").get<long long>() == 500);
    CHECK_THROWS_AS(cli::parse_flag(find("paths"), "lots"), Error);
    CHECK_THROWS_AS(cli::parse_flag(find("h"), "1e-4x"), Error);
    CHECK(cli::parse_flag(find("x0"), "0.3,0.2").size() == 2);
}

TEST_CASE("ko command output document") {
    std::ostringstream log;
    const json cfg = cli::merge_config("ko", json{{"phi", "power:1,2"}}, json::object());
    const auto a = cli::run("ko", cfg, log);
    const auto b = cli::run("ko", cfg, log);
    CHECK(a.exit_code == cli::kOk);
    CHECK(a.doc == b.doc);
    for (const char* key : {"command", "config", "config_hash", "units", "result"}) CHECK(a.doc.contains(key));
    CHECK(a.doc.at("result").at("classification") == "KO_fails");
    CHECK(a.doc.at("result").at("integral_from_zero").at("value").get<double>() ==
          doctest::Approx(3.4641016151377546).epsilon(1e-8));
}

TEST_CASE("blowup with KO holding reports an empty result") {
    std::ostringstream log;
    const json cfg = cli::merge_config("blowup", json{{"phi", "linear:1"}, {"m", 4}}, json::object());
    const auto o = cli::run("blowup", cfg, log);
    CHECK(o.exit_code == cli::kEmpty);
    CHECK(o.message.find("KO holds") != std::string::npos);
}

TEST_CASE("dirichlet command writes its CSV") {
    const std::string path = "dirichlet_unit_test.csv";
    std::ostringstream log;
    const json cfg = cli::merge_config("dirichlet", json{{"phi", "power:1,2"}, {"m", 4}, {"c", 1}, {"points", 51}, {"csv", path}},
                                       json::object());
    const auto o = cli::run("dirichlet", cfg, log);
    CHECK(o.exit_code == cli::kOk);
    CHECK(o.doc.at("result").at("disagreement").get<double>() <= 1e-5);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "r,u,u_prime");
    std::remove(path.c_str());
}

TEST_CASE("verify rejects unknown injected names") {
    std::ostringstream log;
    const json cfg = cli::merge_config("verify", json{{"inject_failure", {"no.such.invariant"}}}, json::object());
    CHECK_THROWS_AS(cli::run("verify", cfg, log), Error);
}
