// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "idgs/state.hpp"

#include <cmath>

namespace idgs {

PureState uniform_state(int m)
{
    if (m < 1)
        throw ParameterError("uniform_state: need at least one qubit");
    if (m > kMaxPureQubits)
        throw CapacityError("uniform_state: register exceeds the statevector ceiling");
    PureState s;
    s.m = m;
    double a = 1.0 / std::sqrt(double(std::size_t(1) << m));
    s.amp.assign(std::size_t(1) << m, cplx(a, 0.0));
    return s;
}

PureState apply_diagonal_phase(PureState state, const std::function<bool(std::uint64_t)>& marked,
                               double phase)
{
    cplx w = std::polar(1.0, phase);
    for (std::uint64_t x = 0; x < state.size(); ++x)
        if (marked(x))
            state.amp[x] *= w;
    return state;
}

PureState apply_suffix_diffusion(PureState state, int s, double theta)
{
    if (s < 1 || s > state.m)
        throw ParameterError("apply_suffix_diffusion: suffix width out of range");
    std::size_t block = std::size_t(1) << s;
    cplx c = (1.0 - std::polar(1.0, theta)) / double(block);
    for (std::size_t base = 0; base < state.size(); base += block) {
        cplx sum(0.0, 0.0);
        for (std::size_t y = 0; y < block; ++y)
            sum += state.amp[base + y];
        cplx add = c * sum;
        for (std::size_t y = 0; y < block; ++y)
            state.amp[base + y] = add - state.amp[base + y];
    }
    return state;
}

PrefixDistribution prefix_distribution(const PureState& state, int p)
{
    if (p < 1 || p > state.m)
        throw ParameterError("prefix_distribution: prefix width out of range");
    PrefixDistribution d;
    d.p = p;
    d.probs.assign(std::size_t(1) << p, 0.0);
    std::size_t block = std::size_t(1) << (state.m - p);
    for (std::size_t i = 0; i < d.probs.size(); ++i) {
        double acc = 0.0;
        for (std::size_t y = 0; y < block; ++y)
            acc += std::norm(state.amp[i * block + y]);
        d.probs[i] = acc;
    }
    return d;
}

std::uint64_t sample_index(const std::vector<double>& probs, Rng& rng)
{
    double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc)
            return i;
    }
    return probs.size() - 1; // u landed in the rounding slack at the top
}

std::vector<std::uint64_t> sample_prefix(const PureState& state, int p, std::uint64_t shots,
                                         std::uint64_t seed)
{
    PrefixDistribution d = prefix_distribution(state, p);
    std::vector<std::uint64_t> hist(d.probs.size(), 0);
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s)
        ++hist[sample_index(d.probs, rng)];
    return hist;
}

double norm_sq(const PureState& state)
{
    double acc = 0.0;
    for (const cplx& a : state.amp)
        acc += std::norm(a);
    return acc;
}

double fidelity(const PureState& a, const PureState& b)
{
    if (a.m != b.m)
        throw ParameterError("fidelity: mismatched widths");
    cplx ip(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        ip += std::conj(a.amp[i]) * b.amp[i];
    return std::norm(ip);
}

MixedState density_from(const PureState& state)
{
    if (state.m > kMaxMixedQubits)
        throw CapacityError("density_from: register exceeds the density-matrix ceiling");
    MixedState r;
    r.m = state.m;
    std::size_t n = state.size();
    r.rho.assign(n * n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.rho[i * n + j] = state.amp[i] * std::conj(state.amp[j]);
    return r;
}

} // namespace idgs
