#include "padicfe/report.hpp"

#include <sstream>

namespace padicfe {

bool SuiteReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void SuiteReport::absorb(const SuiteReport& other) {
    for (const auto& c : other.checks) checks.push_back(c);
}

std::string SuiteReport::summary() const {
    std::ostringstream os;
    int np = 0;
    for (const auto& c : checks) np += c.pass ? 1 : 0;
    os << suite << ": " << np << "/" << checks.size() << " checks passed";
    return os.str();
}

}  // namespace padicfe
