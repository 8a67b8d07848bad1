// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "idgs/depth.hpp"

#include <cmath>

#include "idgs/errors.hpp"
#include "idgs/planner.hpp"

namespace idgs {

GateCosts mcu_costs(int n)
{
    if (n < 7)
        throw ParameterError("mcu_costs: closed forms require n >= 7");
    GateCosts c;
    c.cnot_cost = 12ll * n - 36;
    c.cnot_depth = 8ll * n - 8;
    c.t_cost = 16ll * n - 64;
    c.t_depth = (n - 1) % 2 == 0 ? 8ll * n - 14 : 8ll * n - 11;
    c.h_cost = 8ll * n - 40;
    c.h_depth = 4ll * n - 15;
    c.depth = 8ll * n - 8;
    return c;
}

DepthReport depth_report(int n, int k, int p)
{
    if (k < 0)
        throw ParameterError("depth_report: k must be non-negative");
    int w = n - k;
    if (p < 1 || p >= w)
        throw ParameterError("depth_report: prefix width must satisfy 1 <= p < n - k");
    PartialParams pp = partial_params(w, p);
    LongParams lp = long_params(w - p);

    DepthReport r;
    r.n = n;
    r.k = k;
    r.p = p;
    r.p1 = pp.p1;
    r.p2 = pp.p2;
    r.stage2_iterations = lp.iterations;
    r.d_g2 = 16ll * w - 10;
    r.d_g3 = 16ll * w - 8ll * p - 10;
    r.d_g4 = 16ll * w - 10;
    r.d_l = 16ll * (w - p) - 10;
    r.stage1_total = pp.p1 * r.d_g2 + pp.p2 * r.d_g3 + r.d_g4;
    r.stage2_total = lp.iterations * r.d_l;
    r.overall = r.stage1_total;

    double lambda = std::asin(std::pow(2.0, -0.5 * n));
    long long baseline_iters = (long long)std::floor((M_PI / 2 - lambda) / (2 * lambda));
    r.grover_baseline = (16ll * n - 10) * baseline_iters;
    r.saving = r.grover_baseline - r.overall;

    r.queries_stage1_per_node = pp.p1 + pp.p2 + 1;
    r.queries_stage2_per_node = lp.iterations;
    r.total_query_complexity = M_PI / 4 * std::sqrt(std::pow(2.0, n + k))
                               + 0.45 * std::sqrt(std::pow(2.0, n - p + k)) + 2.0;

    if (w < 7)
        r.warnings.push_back("stage-1 register has fewer than 7 qubits; "
                             "per-gate depth constants extrapolated");
    if (w - p < 7)
        r.warnings.push_back("stage-2 register has fewer than 7 qubits; "
                             "per-gate depth constants extrapolated");
    if (n < 7)
        r.warnings.push_back("baseline register has fewer than 7 qubits; "
                             "per-gate depth constants extrapolated");
    return r;
}

TheoremCheck check_depth_theorem(int n, int k, int p)
{
    DepthReport r = depth_report(n, k, p);
    int w = n - k;
    double theta_prime = std::asin(std::pow(2.0, -0.5 * (w - p)));
    long long j_floor = (long long)std::floor((M_PI / 2 - theta_prime) / (2 * theta_prime));
    TheoremCheck t;
    t.hypothesis_met = p >= 4 && (w - p) >= 7;
    t.stage1_total = r.stage1_total;
    t.stage2_total_floor = (j_floor + 1) * r.d_l;
    t.holds = t.stage1_total > t.stage2_total_floor;
    return t;
}

} // namespace idgs
