// One line per acceptance criterion; nonzero exit if any fails.
#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "dunkl/verify.hpp"

using dunkl::verify::CheckResult;

namespace {

struct Captured {
    int exit_code = -1;
    std::string out;
};

Captured run_lab(const std::string& args) {
    Captured c;
    const std::string cmd = std::string("\"") + DUNKL_LAB_PATH + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return c;
    std::array<char, 4096> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) c.out += buf.data();
    const int status = pclose(pipe);
    c.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return c;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

// Clean full run must pass; with every invariant injected as failing it must
// exit 4 and name each one in a FAIL line.
CheckResult criterion_tripwire() {
    CheckResult r{"coverage_tripwire", false, "", 0.0};
    std::vector<std::string> names;
    for (const auto& l : lines(run_lab("verify --list").out)) {
        if (!l.empty() && l.front() == '{') break;
        std::istringstream first(l);
        std::string name;
        if (first >> name) names.push_back(name);  // drop the "[monte carlo]" tag
    }
    if (names.size() < 20) {
        r.detail = "could not list invariants";
        return r;
    }
    const auto clean = run_lab("verify --full");
    std::string joined;
    for (const auto& n : names) joined += (joined.empty() ? "" : ",") + n;
    const auto broken = run_lab("verify --full --inject-failure " + joined);

    std::size_t reported = 0;
    std::string missing;
    for (const auto& n : names) {
        bool found = false;
        for (const auto& l : lines(broken.out))
            if (l.rfind("FAIL " + n + " ", 0) == 0) found = true;
        if (found) ++reported;
        else missing += " " + n;
    }
    std::ostringstream d;
    d << "invariants=" << names.size() << " clean_exit=" << clean.exit_code << " injected_exit=" << broken.exit_code
      << " reported=" << reported;
    if (!missing.empty()) d << " missing:" << missing;
    r.detail = d.str();
    r.passed = clean.exit_code == 0 && broken.exit_code == 4 && reported == names.size();
    return r;
}

}  // namespace

int main() {
    struct Entry {
        double budget;  // seconds
        CheckResult (*run)();
    };
    const Entry entries[] = {
        {1.0, dunkl::verify::criterion_kernels},
        {10.0, dunkl::verify::criterion_calculus},
        {60.0, dunkl::verify::criterion_radial},
        {60.0, dunkl::verify::criterion_semilinear},
        {900.0, [] { return dunkl::verify::criterion_monte_carlo({}); }},
        {0.0, criterion_tripwire},
    };
    int failures = 0;
    int index = 0;
    for (const auto& e : entries) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = e.run();
        } catch (const std::exception& ex) {
            r.name = "criterion " + std::to_string(index);
            r.detail = std::string("exception: ") + ex.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = r.passed;
        std::string timing;
        if (e.budget > 0.0 && secs > e.budget) {
            ok = false;
            timing = " over time budget";
        }
        std::printf("%s %d %s (%.2fs%s) %s\n", ok ? "PASS" : "FAIL", index, r.name.c_str(), secs, timing.c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("%d of %d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
