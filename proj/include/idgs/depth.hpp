// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

namespace idgs {

// Clifford+T cost of one n-controlled phase-type gate with one ancilla.
struct GateCosts {
    long long cnot_cost;
    long long cnot_depth;
    long long t_cost;
    long long t_depth;
    long long h_cost;
    long long h_depth;
    long long depth; // overall gate depth
};

// Analytic depth/query accounting of the two-stage distributed search
// against the flat single-machine baseline.
struct DepthReport {
    int n;
    int k;
    int p;
    long long p1;
    long long p2;
    long long stage2_iterations;
    long long d_g2; // per-application depths
    long long d_g3;
    long long d_g4;
    long long d_l;
    long long stage1_total;
    long long stage2_total;
    long long overall; // = stage1_total, the deeper stage
    long long grover_baseline;
    long long saving; // baseline - overall
    long long queries_stage1_per_node; // p1 + p2 + 1
    long long queries_stage2_per_node; // stage-2 iterations
    double total_query_complexity;
    std::vector<std::string> warnings; // closed forms used outside validity
};

struct TheoremCheck {
    bool hypothesis_met;     // p >= 4 and n - p - k >= 7
    bool holds;              // stage1_total > floor-based stage-2 total
    long long stage1_total;
    long long stage2_total_floor;
};

// Requires n >= 7; below that the closed forms go negative.
GateCosts mcu_costs(int n);

DepthReport depth_report(int n, int k, int p);

// The stage-1-dominates-stage-2 depth inequality, evaluated with the
// floor-based stage-2 iteration count. Outside the hypotheses the result is
// informational (hypothesis_met = false), not an error.
TheoremCheck check_depth_theorem(int n, int k, int p);

} // namespace idgs
