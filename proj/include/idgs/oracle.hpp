// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idgs/bits.hpp"
#include "idgs/errors.hpp"

namespace idgs {

// Membership oracle over m-bit strings, stored as the explicit marked set.
// Search entry points require exactly one marked item; wider sets appear only
// as intermediates (restrictions may be empty).
struct MarkedOracle {
    int m = 0;
    std::vector<std::uint64_t> marked; // sorted, unique
    bool eval(std::uint64_t x) const;
};

// Names one node's subproblem: the k trailing (least significant) input bits
// are pinned to the value i. k = 0 with i = 0 is the whole function.
struct SubfunctionId {
    int k = 0;
    std::uint64_t i = 0;
};

// Single-target oracle; target is an MSB-first string of length m.
MarkedOracle marked_oracle(int m, const std::string& target);

// General constructor; sorts and dedups, validates range.
MarkedOracle make_oracle(int m, std::vector<std::uint64_t> marked);

// f_i(x) = f(x || i): keeps the marked strings whose trailing k bits equal i,
// reindexed over the remaining m - k leading bits.
MarkedOracle subfunction(const MarkedOracle& f, const SubfunctionId& id);

// Pins the leading |x_i| bits to x_i, reindexing over the trailing rest.
MarkedOracle restrict_prefix(const MarkedOracle& f, const std::string& x_i);

// Evaluates f on an MSB-first string of length f.m; returns 0 or 1.
int classical_eval(const MarkedOracle& f, const std::string& x);

} // namespace idgs
