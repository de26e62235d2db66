#pragma once

#include <string>
#include <vector>

namespace ghzsim {

struct CheckResult {
    std::string name;
    double value;      // measured quantity
    double threshold;  // pass iff value <= threshold
    bool pass;
};

struct VerifyOptions {
    double tol = 1e-10;
    bool perturb = false;  // test hook: injects a deliberate matrix error
};

/// Full invariant suite: unitarity sweeps, dispersive convergence, Mermin
/// algebra, LHV scan, preparation fidelities.
std::vector<CheckResult> run_verify(const VerifyOptions& opts = {});

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace ghzsim
