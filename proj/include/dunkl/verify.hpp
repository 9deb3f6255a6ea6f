#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dunkl::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Monte Carlo budget for the invariant suite.
struct McOptions {
    std::size_t paths = 10000;
    double h = 1e-4;
    std::uint64_t seed = 7;
    unsigned threads = 0;
};

/// A named property check. Names are `module.property`.
struct Invariant {
    std::string name;
    bool monte_carlo = false;
    std::function<CheckResult(const McOptions&)> run;
};

/// Invariants of the numerical library (everything except the command line).
const std::vector<Invariant>& library_invariants();

struct SuiteOptions {
    bool full = false;  // include Monte Carlo invariants
    McOptions mc;
    /// Names whose verdict is forced to failure after running (tripwire test).
    std::vector<std::string> inject_failures;
};

/// Runs the invariants in order; exceptions count as failures. `progress`
/// sees each result as soon as it is available.
std::vector<CheckResult> run_suite(const std::vector<Invariant>& invariants, const SuiteOptions& options,
                                   const std::function<void(const CheckResult&)>& progress = {});

// Acceptance criteria, one aggregated verdict each.
CheckResult criterion_kernels();
CheckResult criterion_calculus();
CheckResult criterion_radial();
CheckResult criterion_semilinear();

struct McAcceptanceOptions {
    std::size_t exit_paths = 100000;
    std::size_t support_paths = 100000;
    std::size_t law_paths = 10000;
    double law_t = 1.0;
    std::size_t rerun_paths = 10000;
    double h = 1e-4;
    std::uint64_t seed = 20261016;
    unsigned threads = 0;
};
CheckResult criterion_monte_carlo(const McAcceptanceOptions& options);

}  // namespace dunkl::verify
