// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

namespace idgs {

struct IdentityResult {
    std::string name;
    bool pass;
    double max_residual;
    std::string note; // grid description, skip reasons
};

// Runs the closed-form identity suite backing the planner and algorithms:
// stage-1 amplitude closed forms vs simulation, the closing-phase
// consistency system, the non-target cancellation residual, the
// prefix-splitting identity, query-coefficient monotonicity, the
// query-count stationarity at beta_q, and the asymptotic wide-register
// cancellation. inject_wrong_sign flips the closing oracle phase's sign so
// tests can demonstrate the consistency check catches a wrong convention.
std::vector<IdentityResult> run_identity_checks(bool inject_wrong_sign = false);

} // namespace idgs
