#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tpsd {

struct VerifyResult {
    std::string suite;
    double residual = 0.0;  // max absolute residual, or max z-score for Monte Carlo suites
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

const std::vector<std::string>& verify_suites();

/// Runs one named suite; throws ValidationError for an unknown name.
VerifyResult run_verify_suite(const std::string& suite, std::uint64_t seed);

} // namespace tpsd
