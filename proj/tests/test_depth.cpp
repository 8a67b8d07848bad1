// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>

#include "idgs/depth.hpp"
#include "idgs/errors.hpp"

using namespace idgs;

TEST_CASE("depth report for the twelve-bit worked configuration")
{
    DepthReport r = depth_report(12, 1, 3);
    CHECK(r.p1 == 21);
    CHECK(r.p2 == 9);
    CHECK(r.stage2_iterations == 13);
    CHECK(r.d_g2 == 166);
    CHECK(r.d_g3 == 142);
    CHECK(r.d_g4 == 166);
    CHECK(r.d_l == 118);
    CHECK(r.stage1_total == 4930);
    CHECK(r.stage2_total == 1534);
    CHECK(r.overall == 4930);
    CHECK(r.grover_baseline == 8918);
    CHECK(r.saving == 3988);
    CHECK(r.queries_stage1_per_node == 31);
    CHECK(r.queries_stage2_per_node == 13);
    CHECK(std::fabs(r.total_query_complexity - 87.4861270105339) < 1e-9);
    CHECK(r.warnings.empty());
}

TEST_CASE("depth report for the five-bit worked configuration carries warnings")
{
    DepthReport r = depth_report(5, 1, 2);
    CHECK(r.p1 == 1);
    CHECK(r.p2 == 1);
    CHECK(r.stage2_iterations == 1);
    CHECK(r.d_g2 == 54);
    CHECK(r.d_g3 == 38);
    CHECK(r.d_l == 22);
    CHECK(r.stage1_total == 146);
    CHECK(r.stage2_total == 22);
    CHECK(r.grover_baseline == 210);
    CHECK(r.saving == 64);
    CHECK(r.queries_stage1_per_node == 3);
    CHECK(r.queries_stage2_per_node == 1);
    CHECK(std::fabs(r.total_query_complexity - 10.0831853071796) < 1e-9);
    // Both registers sit below the closed forms' validity floor.
    CHECK(r.warnings.size() == 3);
}

TEST_CASE("depth_report validates its arguments")
{
    CHECK_THROWS_AS(depth_report(5, -1, 2), ParameterError);
    CHECK_THROWS_AS(depth_report(5, 1, 0), ParameterError);
    CHECK_THROWS_AS(depth_report(5, 1, 4), ParameterError);
}

TEST_CASE("controlled-gate cost table matches the closed forms")
{
    GateCosts c7 = mcu_costs(7);
    CHECK(c7.cnot_cost == 48);
    CHECK(c7.cnot_depth == 48);
    CHECK(c7.t_cost == 48);
    CHECK(c7.t_depth == 42);
    CHECK(c7.h_cost == 16);
    CHECK(c7.h_depth == 13);
    CHECK(c7.depth == 48);

    GateCosts c11 = mcu_costs(11);
    CHECK(c11.cnot_cost == 96);
    CHECK(c11.cnot_depth == 80);
    CHECK(c11.t_cost == 112);
    CHECK(c11.t_depth == 74);
    CHECK(c11.h_cost == 48);
    CHECK(c11.h_depth == 29);
    CHECK(c11.depth == 80);

    // The T-depth constant alternates with the control-count parity.
    GateCosts c12 = mcu_costs(12);
    CHECK(c12.t_depth == 85);
    CHECK(c12.cnot_cost == 108);
    CHECK(c12.depth == 88);

    CHECK_THROWS_AS(mcu_costs(6), ParameterError);
}

TEST_CASE("stage 1 dominates the floor-count stage 2 on the whole hypothesis grid")
{
    for (int k : {1, 3}) {
        for (int p = 4; p <= 8; ++p) {
            for (int m2 = 7; m2 <= 12; ++m2) {
                int n = p + m2 + k;
                TheoremCheck t = check_depth_theorem(n, k, p);
                CHECK(t.hypothesis_met);
                CHECK(t.holds);
                CHECK(t.stage1_total > t.stage2_total_floor);
            }
        }
    }
}

TEST_CASE("outside the hypotheses the theorem check is informational")
{
    TheoremCheck t = check_depth_theorem(5, 1, 2);
    CHECK(!t.hypothesis_met);
    CHECK(t.holds); // 146 > 22: the inequality happens to hold anyway
    CHECK(t.stage1_total == 146);
    CHECK(t.stage2_total_floor == 22);
}
