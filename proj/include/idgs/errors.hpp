// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace idgs {

// Base class for every error the library raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Register or matrix size beyond the configured simulation ceiling.
struct CapacityError : Error {
    using Error::Error;
};

// Argument outside an operation's documented domain.
struct ParameterError : Error {
    using Error::Error;
};

// An inverse-trig argument left [-1, 1] by more than the clamp tolerance.
struct NumericDomainError : Error {
    using Error::Error;
};

// The closing-rotation phase system has no solution for these amplitudes.
// Carries the diagnostic triple so callers can report why.
struct InfeasiblePlanError : Error {
    double E;
    double F;
    double a_t;
    InfeasiblePlanError(const std::string& msg, double E_, double F_, double a_t_)
        : Error(msg), E(E_), F(F_), a_t(a_t_) {}
};

// Internal consistency violated, e.g. two verified candidates for a problem
// that promises a unique target.
struct IntegrityError : Error {
    using Error::Error;
};

} // namespace idgs
