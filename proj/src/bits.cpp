// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "idgs/bits.hpp"

#include <cmath>

#include "idgs/errors.hpp"

namespace idgs {

std::string format_bits(std::uint64_t value, int width)
{
    if (width < 0 || width > 63)
        throw ParameterError("format_bits: width out of range");
    if (width < 64 && (value >> width) != 0)
        throw ParameterError("format_bits: value does not fit in width");
    std::string s(std::size_t(width), '0');
    for (int j = 0; j < width; ++j)
        if ((value >> (width - 1 - j)) & 1ull)
            s[std::size_t(j)] = '1';
    return s;
}

std::uint64_t parse_bits(const std::string& s)
{
    if (s.size() > 63)
        throw ParameterError("parse_bits: string longer than 63 bits");
    std::uint64_t v = 0;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw ParameterError("parse_bits: invalid character in bit string \"" + s + "\"");
        v = (v << 1) | std::uint64_t(c == '1');
    }
    return v;
}

long long round_half_away(double x)
{
    return x >= 0 ? (long long)std::floor(x + 0.5) : -(long long)std::floor(-x + 0.5);
}

} // namespace idgs
