// checks.hpp - named invariant checks per module, shared by the CLI `check`
// command and the test suites.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conekit {

struct CheckResult {
    std::string id;
    bool passed = false;
    double measured = 0.0;   // the quantity the check bounds
    double bound = 0.0;      // the bound it must satisfy
    std::string detail;
};

// suites: "specfun", "geometry", "kernels", "cubature", "frames", "approx"
std::vector<CheckResult> run_checks(const std::string& suite, int d, double gamma, double mu,
                                    std::uint64_t seed);

std::vector<std::string> known_suites();

}  // namespace conekit
