#pragma once

#include <string>
#include <vector>

namespace ptsusy {

struct Check {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<Check> checks;

    void add(std::string name, double residual, double threshold) {
        checks.push_back({std::move(name), residual, threshold, residual < threshold});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

} // namespace ptsusy
