#pragma once
//==============================================================================
// selfcheck.hpp
// Named property suites behind the `selftest` command: Bony identity,
// dyadic reconstruction, derivative-scaling brackets, the pointwise
// 2|u|^r <= r ||u||^r_{W^{1,r}} inequality, Helmholtz operator checks,
// model reductions, Riccati saturation, and conservation-law regression runs.
//==============================================================================

#include <functional>
#include <string>
#include <vector>

namespace gx::selfcheck {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> run_all(bool quick = false);

} // namespace gx::selfcheck
