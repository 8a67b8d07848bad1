// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "idgs/gates.hpp"
#include "idgs/rng.hpp"

namespace idgs {

// 2x2 Kraus operator, e[row][col].
struct Kraus2 {
    std::array<std::array<cplx, 2>, 2> e;
};

// Single-qubit channel given by its Kraus operators. The label selects fast
// paths in the density walker; the operators are authoritative.
struct KrausChannel {
    enum class Label { amplitude_damping, phase_damping, custom };
    Label label = Label::custom;
    double gamma = 0.0;
    std::vector<Kraus2> ops;
};

KrausChannel amplitude_damping(double gamma);
KrausChannel phase_damping(double gamma);

// Validates completeness sum E_k^dag E_k = I within 1e-12.
KrausChannel custom_channel(std::vector<Kraus2> ops);

// Noise model: the channel acts once per gate on every qubit the gate
// touches (GPhase touches none). density evolves the exact density matrix;
// trajectories averages per-trajectory exact success probabilities.
struct NoiseSpec {
    KrausChannel channel;
    enum class Backend { density, trajectories } backend = Backend::density;
    long long trajectories = 4000; // >= 100 when the backend is trajectories
};

MixedState apply_channel(MixedState rho, const KrausChannel& ch, int qubit);

// Exact noisy evolution of a compiled circuit from |0...0>.
MixedState evolve_density(const GateSequence& seq, const KrausChannel& ch);

// One stochastic unraveling of the same circuit (used by the trajectories
// backend; exposed for cross-validation tests).
PureState evolve_trajectory(const GateSequence& seq, const KrausChannel& ch, Rng& rng);

// Final measurement distribution over all width-qubit outcomes. density is
// exact; trajectories averages `shots` runs (spec.trajectories when shots
// is 0).
std::vector<double> noisy_distribution(const GateSequence& seq, const NoiseSpec& spec,
                                       std::uint64_t seed, long long shots = 0);

struct NoisyResult {
    double success;
    double stderr_est; // 0 for the density backend
};

// Success probability of `success` outcomes under the noise model. Density
// backend requires width <= 13 and ignores shots/seed.
NoisyResult run_noisy(const GateSequence& seq, const NoiseSpec& spec,
                      const std::function<bool(std::uint64_t)>& success, long long shots,
                      std::uint64_t seed);

double trace_of(const MixedState& rho);
double hermiticity_defect(const MixedState& rho);

} // namespace idgs
