// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "idgs/algorithms.hpp"

#include <algorithm>
#include <cmath>

namespace idgs {

namespace {

// Probability of the stage outcome the caller cares about: the target-derived
// index when the oracle pins one, else the sampled index.
double outcome_prob(const PrefixDistribution& dist, std::uint64_t index)
{
    return dist.probs[index];
}

std::uint64_t argmax_index(const PrefixDistribution& dist)
{
    return std::uint64_t(std::max_element(dist.probs.begin(), dist.probs.end())
                         - dist.probs.begin());
}

} // namespace

StageResult run_long_rng(const MarkedOracle& f, Rng& rng)
{
    LongParams lp = long_params(f.m);
    PureState st = uniform_state(f.m);
    SearchOperator op = make_l(f, lp.omega);
    for (long long it = 0; it < lp.iterations; ++it)
        st = apply_search_operator(std::move(st), op);
    PrefixDistribution dist = prefix_distribution(st, f.m);
    std::uint64_t measured = sample_index(dist.probs, rng);
    double success = f.marked.size() == 1 ? outcome_prob(dist, f.marked[0])
                                          : outcome_prob(dist, measured);
    return StageResult{format_bits(measured, f.m), std::move(st), success};
}

StageResult run_long(const MarkedOracle& f, std::uint64_t seed)
{
    Rng rng(seed);
    return run_long_rng(f, rng);
}

StageResult run_grk(const MarkedOracle& f, int q, std::uint64_t seed)
{
    if (f.marked.size() != 1)
        throw ParameterError("run_grk: needs exactly one marked item");
    GrkParams gp = grk_params(f.m, q);
    PureState st = uniform_state(f.m);
    SearchOperator g = make_g(f);
    SearchOperator g1 = make_g1(f, q);
    for (long long it = 0; it < gp.j1; ++it)
        st = apply_search_operator(std::move(st), g);
    for (long long it = 0; it < gp.j2; ++it)
        st = apply_search_operator(std::move(st), g1);
    st = apply_search_operator(std::move(st), g);
    PrefixDistribution dist = prefix_distribution(st, q);
    Rng rng(seed);
    std::uint64_t measured = sample_index(dist.probs, rng);
    double success = outcome_prob(dist, prefix_of(f.marked[0], f.m, q));
    return StageResult{format_bits(measured, q), std::move(st), success};
}

StageResult idgs_stage1_rng(const MarkedOracle& f_i, int p, Rng& rng, bool mirrored)
{
    if (f_i.marked.size() > 1)
        throw ParameterError("idgs_stage1: needs at most one marked item");
    PartialParams pp = partial_params(f_i.m, p);
    auto [theta, phi] = solve_phases(pp.E, pp.F, pp.a_t, f_i.m, mirrored);
    PureState st = uniform_state(f_i.m);
    SearchOperator g2 = make_g2(f_i);
    SearchOperator g3 = make_g3(f_i, p);
    SearchOperator g4 = make_g4(f_i, theta, phi);
    for (long long it = 0; it < pp.p1; ++it)
        st = apply_search_operator(std::move(st), g2);
    for (long long it = 0; it < pp.p2; ++it)
        st = apply_search_operator(std::move(st), g3);
    st = apply_search_operator(std::move(st), g4);
    PrefixDistribution dist = prefix_distribution(st, p);
    std::uint64_t measured = sample_index(dist.probs, rng);
    double success = f_i.marked.size() == 1 ? outcome_prob(dist, prefix_of(f_i.marked[0], f_i.m, p))
                                            : outcome_prob(dist, measured);
    return StageResult{format_bits(measured, p), std::move(st), success};
}

StageResult idgs_stage1(const MarkedOracle& f_i, int p, std::uint64_t seed, bool mirrored)
{
    Rng rng(seed);
    return idgs_stage1_rng(f_i, p, rng, mirrored);
}

StageResult run_exact_partial(const MarkedOracle& f, int q, bool mirrored)
{
    if (f.marked.size() != 1)
        throw ParameterError("run_exact_partial: needs exactly one marked item");
    // Same schedule as stage 1 with nothing pinned; the readout is
    // deterministic, so report the certain outcome instead of sampling.
    Rng rng(0);
    StageResult r = idgs_stage1_rng(f, q, rng, mirrored);
    PrefixDistribution dist = prefix_distribution(r.final_state, q);
    r.measured = format_bits(argmax_index(dist), q);
    return r;
}

StageResult idgs_stage2(const MarkedOracle& f_restricted, std::uint64_t seed)
{
    return run_long(f_restricted, seed);
}

GateSequence long_circuit(const MarkedOracle& f)
{
    LongParams lp = long_params(f.m);
    GateSequence seq;
    seq.width = f.m;
    for (int q = 0; q < f.m; ++q)
        seq.gates.push_back(make_h(q));
    GateSequence op = compile_operator(make_l(f, lp.omega));
    for (long long it = 0; it < lp.iterations; ++it)
        seq.gates.insert(seq.gates.end(), op.gates.begin(), op.gates.end());
    return seq;
}

GateSequence stage1_circuit(const MarkedOracle& f_i, int p, bool mirrored)
{
    PartialParams pp = partial_params(f_i.m, p);
    auto [theta, phi] = solve_phases(pp.E, pp.F, pp.a_t, f_i.m, mirrored);
    GateSequence seq;
    seq.width = f_i.m;
    for (int q = 0; q < f_i.m; ++q)
        seq.gates.push_back(make_h(q));
    GateSequence g2 = compile_operator(make_g2(f_i));
    GateSequence g3 = compile_operator(make_g3(f_i, p));
    GateSequence g4 = compile_operator(make_g4(f_i, theta, phi));
    for (long long it = 0; it < pp.p1; ++it)
        seq.gates.insert(seq.gates.end(), g2.gates.begin(), g2.gates.end());
    for (long long it = 0; it < pp.p2; ++it)
        seq.gates.insert(seq.gates.end(), g3.gates.begin(), g3.gates.end());
    seq.gates.insert(seq.gates.end(), g4.gates.begin(), g4.gates.end());
    return seq;
}

} // namespace idgs
