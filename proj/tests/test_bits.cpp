// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "doctest.h"

#include "idgs/bits.hpp"
#include "idgs/errors.hpp"

using namespace idgs;

TEST_CASE("format_bits spells values MSB first")
{
    CHECK(format_bits(12, 5) == "01100");
    CHECK(format_bits(0, 3) == "000");
    CHECK(format_bits(1, 1) == "1");
    CHECK(format_bits(5, 3) == "101");
    CHECK(format_bits(0b111000001111ull, 12) == "111000001111");
    CHECK(format_bits(0, 0) == "");
}

TEST_CASE("parse_bits inverts format_bits")
{
    CHECK(parse_bits("01100") == 12);
    CHECK(parse_bits("") == 0);
    CHECK(parse_bits("0") == 0);
    CHECK(parse_bits("111000001111") == 0b111000001111ull);
    for (std::uint64_t v = 0; v < 64; ++v)
        CHECK(parse_bits(format_bits(v, 6)) == v);
}

TEST_CASE("format_bits and parse_bits reject bad input")
{
    CHECK_THROWS_AS(format_bits(4, 2), ParameterError);  // 4 needs 3 bits
    CHECK_THROWS_AS(format_bits(0, -1), ParameterError);
    CHECK_THROWS_AS(format_bits(0, 64), ParameterError);
    CHECK_THROWS_AS(parse_bits("01a0"), ParameterError);
    CHECK_THROWS_AS(parse_bits("2"), ParameterError);
    CHECK_THROWS_AS(parse_bits(std::string(64, '0')), ParameterError);
}

TEST_CASE("prefix_of and suffix_of split an index at the declared width")
{
    // 01100 over 5 bits: 2-bit prefix 01, 3-bit suffix 100.
    CHECK(prefix_of(0b01100, 5, 2) == 0b01);
    CHECK(suffix_of(0b01100, 3) == 0b100);
    CHECK(prefix_of(0b01100, 5, 0) == 0);
    CHECK(suffix_of(0b01100, 0) == 0);
    CHECK(prefix_of(0b01100, 5, 5) == 0b01100);
    CHECK(suffix_of(0b01100, 5) == 0b01100);
    CHECK(suffix_of(~0ull, 64) == ~0ull);
    // prefix || suffix reassembles the index for every split point.
    std::uint64_t x = 0b1011001110;
    for (int p = 0; p <= 10; ++p)
        CHECK(((prefix_of(x, 10, p) << (10 - p)) | suffix_of(x, 10 - p)) == x);
}

TEST_CASE("bit_at reads qubit 0 as the most significant position")
{
    CHECK(bit_at(0b01100, 5, 0) == 0);
    CHECK(bit_at(0b01100, 5, 1) == 1);
    CHECK(bit_at(0b01100, 5, 2) == 1);
    CHECK(bit_at(0b01100, 5, 3) == 0);
    CHECK(bit_at(0b01100, 5, 4) == 0);
    for (int q = 0; q < 6; ++q)
        CHECK(bit_at(0b100000 >> q << q, 6, q) == (format_bits(0b100000 >> q << q, 6)[q] - '0'));
}

TEST_CASE("round_half_away rounds halves away from zero")
{
    CHECK(round_half_away(0.5) == 1);
    CHECK(round_half_away(-0.5) == -1);
    CHECK(round_half_away(1.5) == 2);
    CHECK(round_half_away(-1.5) == -2);
    CHECK(round_half_away(2.4999) == 2);
    CHECK(round_half_away(2.5001) == 3);
    CHECK(round_half_away(0.0) == 0);
    CHECK(round_half_away(-0.4999) == 0);
    CHECK(round_half_away(1e6 + 0.5) == 1000001);
}
