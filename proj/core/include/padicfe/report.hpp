#pragma once

#include <string>
#include <vector>

namespace padicfe {

/// One verified identity.  `anchor` is a stable label naming the identity
/// being checked (machine-readable, used to key report entries).
struct CheckResult {
    std::string name;
    std::string anchor;
    bool pass = false;
    /// guaranteed modulus exponent of the equality (p^eff), -1 if n/a
    int effective_precision = -1;
    std::string params;
    std::string witness;  // first offending data on failure
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    void add(CheckResult c) { checks.push_back(std::move(c)); }
    /// merge another report's checks into this one
    void absorb(const SuiteReport& other);
    std::string summary() const;
};

}  // namespace padicfe
