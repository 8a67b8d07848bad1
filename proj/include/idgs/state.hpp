// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "idgs/errors.hpp"
#include "idgs/rng.hpp"

namespace idgs {

using cplx = std::complex<double>;

inline constexpr int kMaxPureQubits = 26;
inline constexpr int kMaxMixedQubits = 13;

// Statevector over m qubits. amp[x] is the amplitude of the basis string
// whose MSB-first spelling is format_bits(x, m); qubit 0 lives in the top
// index bit. Normalized to 1 within 1e-12 by every constructor here.
struct PureState {
    int m = 0;
    std::vector<cplx> amp;
    std::size_t size() const { return amp.size(); }
};

// Dense row-major density matrix over m qubits. Hermitian with unit trace
// within 1e-10 under every operation in this library.
struct MixedState {
    int m = 0;
    std::vector<cplx> rho; // dim x dim, row-major
    std::size_t dim() const { return std::size_t(1) << m; }
};

// Measurement distribution of the p most significant qubits.
struct PrefixDistribution {
    int p = 0;
    std::vector<double> probs; // size 2^p, sums to 1 within 1e-10
};

// Equal superposition over all 2^m basis states.
PureState uniform_state(int m);

// Multiplies amp[x] by e^{i*phase} wherever marked(x) is true.
PureState apply_diagonal_phase(PureState state, const std::function<bool(std::uint64_t)>& marked,
                               double phase);

// Applies (1 - e^{i*theta})|u><u| - I on the trailing s qubits of every
// prefix block, where |u> is the uniform state of the block. theta = pi is
// inversion about the block mean.
PureState apply_suffix_diffusion(PureState state, int s, double theta);

// Exact marginal of the p most significant qubits.
PrefixDistribution prefix_distribution(const PureState& state, int p);

// Multinomial histogram of `shots` prefix measurements. Sampling inverts the
// exact CDF with the library Rng, so equal seeds give equal histograms.
std::vector<std::uint64_t> sample_prefix(const PureState& state, int p, std::uint64_t shots,
                                         std::uint64_t seed);

double norm_sq(const PureState& state);

// |<a|b>|^2; two states are "the same result" when this is >= 1 - 1e-10.
double fidelity(const PureState& a, const PureState& b);

MixedState density_from(const PureState& state);

// One draw from an explicit distribution by CDF inversion.
std::uint64_t sample_index(const std::vector<double>& probs, Rng& rng);

} // namespace idgs
