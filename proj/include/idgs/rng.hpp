// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <random>

namespace idgs {

// Deterministic random stream. uniform() maps the top 53 bits of mt19937_64
// output onto [0,1) directly instead of going through the standard library's
// distributions, whose output is implementation-defined; seeded runs are
// therefore byte-reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

} // namespace idgs
