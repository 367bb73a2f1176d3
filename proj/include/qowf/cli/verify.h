#pragma once

#include <string>
#include <vector>

namespace qowf {

struct CheckResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    std::string selector = "all";  // "all" or a module name
    /// Appends a small rotation to the perfect inverter used by the
    /// inverter and reduction checks; those checks must then fail.
    bool inject_fault = false;
};

const std::vector<std::string>& verify_modules();

std::vector<CheckResult> verify_suite(const VerifyOptions& options);

}  // namespace qowf
