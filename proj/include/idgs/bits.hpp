// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>

namespace idgs {

// Bit-string convention used across the library: strings are written most
// significant bit first, so "01100" names index 12 and qubit 0 is the
// leftmost (most significant) position. A "prefix" is the high-order end,
// a "suffix" the low-order end.

std::string format_bits(std::uint64_t value, int width);

// Width is the string length; every character must be '0' or '1'.
std::uint64_t parse_bits(const std::string& s);

inline std::uint64_t prefix_of(std::uint64_t x, int width, int p)
{
    return p == 0 ? 0 : (x >> (width - p));
}

inline std::uint64_t suffix_of(std::uint64_t x, int s)
{
    return s == 0 ? 0 : (x & ((s >= 64) ? ~0ull : ((1ull << s) - 1ull)));
}

// Value of qubit `qubit` (0 = MSB) in an index over `width` qubits.
inline int bit_at(std::uint64_t x, int width, int qubit)
{
    return int((x >> (width - 1 - qubit)) & 1ull);
}

// Round half away from zero; iteration counts are derived with this rule.
long long round_half_away(double x);

} // namespace idgs
