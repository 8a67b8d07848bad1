// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "idgs/algorithms.hpp"
#include "idgs/noise.hpp"

using namespace idgs;

namespace {

// A small width-3 circuit mixing every gate family the compiler emits.
GateSequence mixed_circuit()
{
    GateSequence seq;
    seq.width = 3;
    seq.gates = {make_h(0), make_h(1), make_h(2), make_x(1), make_mcp({0, 1, 2}, 1.1),
                 make_x(1), make_cnot(0, 2), make_t(1), make_p(2, 0.4), make_gphase(0.9),
                 make_h(1)};
    return seq;
}

double kraus_completeness_defect(const KrausChannel& ch)
{
    // || sum E^dag E - I ||_max over the 2x2 entries.
    cplx s00(0, 0), s01(0, 0), s10(0, 0), s11(0, 0);
    for (const Kraus2& k : ch.ops) {
        s00 += std::conj(k.e[0][0]) * k.e[0][0] + std::conj(k.e[1][0]) * k.e[1][0];
        s01 += std::conj(k.e[0][0]) * k.e[0][1] + std::conj(k.e[1][0]) * k.e[1][1];
        s10 += std::conj(k.e[0][1]) * k.e[0][0] + std::conj(k.e[1][1]) * k.e[1][0];
        s11 += std::conj(k.e[0][1]) * k.e[0][1] + std::conj(k.e[1][1]) * k.e[1][1];
    }
    double d = std::abs(s00 - cplx(1, 0));
    d = std::max(d, std::abs(s01));
    d = std::max(d, std::abs(s10));
    return std::max(d, std::abs(s11 - cplx(1, 0)));
}

} // namespace

TEST_CASE("built-in channels are complete and validate gamma")
{
    for (double g : {0.0, 0.01, 0.3, 1.0}) {
        CHECK(kraus_completeness_defect(amplitude_damping(g)) < 1e-15);
        CHECK(kraus_completeness_defect(phase_damping(g)) < 1e-15);
    }
    CHECK_THROWS_AS(amplitude_damping(-0.1), ParameterError);
    CHECK_THROWS_AS(amplitude_damping(1.1), ParameterError);
    CHECK_THROWS_AS(phase_damping(2.0), ParameterError);
}

TEST_CASE("custom_channel accepts complete sets and rejects broken ones")
{
    KrausChannel ad = amplitude_damping(0.2);
    KrausChannel c = custom_channel(ad.ops);
    CHECK(c.label == KrausChannel::Label::custom);
    Kraus2 broken{{{{cplx(1, 0), cplx(0, 0)}, {cplx(0, 0), cplx(0.5, 0)}}}};
    CHECK_THROWS_AS(custom_channel({broken}), ParameterError);
    CHECK_THROWS_AS(custom_channel({}), ParameterError);
}

TEST_CASE("density evolution preserves trace and hermiticity")
{
    for (double g : {0.0, 0.02, 0.2}) {
        for (const KrausChannel& ch : {amplitude_damping(g), phase_damping(g)}) {
            MixedState rho = evolve_density(mixed_circuit(), ch);
            CHECK(std::fabs(trace_of(rho) - 1.0) < 1e-9);
            CHECK(hermiticity_defect(rho) < 1e-9);
        }
    }
}

TEST_CASE("amplitude damping composes by survival-probability product")
{
    // AD(g1) then AD(g2) equals AD(1 - (1-g1)(1-g2)) on any state.
    double g1 = 0.13, g2 = 0.21;
    PureState st = uniform_state(2);
    st = apply_diagonal_phase(std::move(st), [](std::uint64_t x) { return x & 1; }, 0.7);
    MixedState rho = density_from(st);
    MixedState a = apply_channel(apply_channel(rho, amplitude_damping(g1), 1),
                                 amplitude_damping(g2), 1);
    MixedState b = apply_channel(rho, amplitude_damping(1.0 - (1.0 - g1) * (1.0 - g2)), 1);
    for (std::size_t i = 0; i < a.rho.size(); ++i)
        CHECK(std::abs(a.rho[i] - b.rho[i]) < 1e-12);
    CHECK_THROWS_AS(apply_channel(rho, amplitude_damping(0.1), 2), ParameterError);
}

TEST_CASE("zero-noise density evolution equals the pure simulation")
{
    GateSequence seq = mixed_circuit();
    MixedState noisy = evolve_density(seq, amplitude_damping(0.0));
    PureState z;
    z.m = 3;
    z.amp.assign(8, cplx(0, 0));
    z.amp[0] = cplx(1, 0);
    MixedState pure = density_from(simulate(seq, z));
    for (std::size_t i = 0; i < noisy.rho.size(); ++i)
        CHECK(std::abs(noisy.rho[i] - pure.rho[i]) < 1e-12);
}

TEST_CASE("the fused phase-damping pass matches the generic Kraus walk")
{
    // Same operators, custom label: the density walker must take the
    // per-qubit generic path and land on the same matrix.
    double g = 0.17;
    GateSequence seq = mixed_circuit();
    MixedState fused = evolve_density(seq, phase_damping(g));
    MixedState generic = evolve_density(seq, custom_channel(phase_damping(g).ops));
    for (std::size_t i = 0; i < fused.rho.size(); ++i)
        CHECK(std::abs(fused.rho[i] - generic.rho[i]) < 1e-12);
}

TEST_CASE("custom amplitude damping matches the labeled fast path too")
{
    double g = 0.23;
    GateSequence seq = mixed_circuit();
    MixedState fast = evolve_density(seq, amplitude_damping(g));
    MixedState generic = evolve_density(seq, custom_channel(amplitude_damping(g).ops));
    for (std::size_t i = 0; i < fast.rho.size(); ++i)
        CHECK(std::abs(fast.rho[i] - generic.rho[i]) < 1e-12);
}

TEST_CASE("noisy_distribution is a probability vector on both backends")
{
    MarkedOracle f = marked_oracle(3, "101");
    GateSequence seq = long_circuit(f);
    for (auto backend : {NoiseSpec::Backend::density, NoiseSpec::Backend::trajectories}) {
        NoiseSpec spec{amplitude_damping(0.05), backend, 400};
        std::vector<double> probs = noisy_distribution(seq, spec, 5);
        CHECK(probs.size() == 8);
        double sum = 0.0;
        for (double p : probs) {
            CHECK(p >= -1e-12);
            sum += p;
        }
        CHECK(std::fabs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("trajectories agree with the exact density result within 3 sigma")
{
    MarkedOracle f = marked_oracle(3, "011");
    GateSequence seq = long_circuit(f);
    auto hit = [](std::uint64_t x) { return x == 0b011; };
    NoiseSpec dens{amplitude_damping(0.05), NoiseSpec::Backend::density, 4000};
    NoisyResult exact = run_noisy(seq, dens, hit, 0, 0);
    CHECK(exact.stderr_est == 0.0);
    NoiseSpec traj{amplitude_damping(0.05), NoiseSpec::Backend::trajectories, 2000};
    NoisyResult sampled = run_noisy(seq, traj, hit, 0, 31);
    CHECK(sampled.stderr_est > 0.0);
    CHECK(std::fabs(sampled.success - exact.success) < 3.0 * sampled.stderr_est + 1e-3);
    // Same seed, same estimate, bit for bit.
    NoisyResult again = run_noisy(seq, traj, hit, 0, 31);
    CHECK(again.success == sampled.success);
    CHECK(again.stderr_est == sampled.stderr_est);
}

TEST_CASE("phase damping trajectories also match their density result")
{
    MarkedOracle f = marked_oracle(3, "110");
    GateSequence seq = long_circuit(f);
    auto hit = [](std::uint64_t x) { return x == 0b110; };
    NoisyResult exact =
        run_noisy(seq, NoiseSpec{phase_damping(0.04), NoiseSpec::Backend::density, 0}, hit, 0, 0);
    NoisyResult sampled = run_noisy(
        seq, NoiseSpec{phase_damping(0.04), NoiseSpec::Backend::trajectories, 2000}, hit, 0, 77);
    CHECK(std::fabs(sampled.success - exact.success) < 3.0 * sampled.stderr_est + 1e-3);
}

TEST_CASE("zero noise lets one trajectory stand for all of them")
{
    MarkedOracle f = marked_oracle(4, "0101");
    GateSequence seq = long_circuit(f);
    auto hit = [](std::uint64_t x) { return x == 0b0101; };
    NoiseSpec spec{amplitude_damping(0.0), NoiseSpec::Backend::trajectories, 4000};
    NoisyResult r = run_noisy(seq, spec, hit, 0, 1);
    CHECK(std::fabs(r.success - 1.0) < 1e-9);
    CHECK(r.stderr_est == 0.0);
}

TEST_CASE("noise backends enforce their capacity and parameter limits")
{
    GateSequence wide;
    wide.width = kMaxMixedQubits + 1;
    for (int q = 0; q < wide.width; ++q)
        wide.gates.push_back(make_h(q));
    NoiseSpec dens{amplitude_damping(0.01), NoiseSpec::Backend::density, 0};
    CHECK_THROWS_AS(run_noisy(wide, dens, [](std::uint64_t) { return true; }, 0, 0),
                    CapacityError);
    MarkedOracle f = marked_oracle(3, "111");
    GateSequence seq = long_circuit(f);
    NoiseSpec traj{amplitude_damping(0.01), NoiseSpec::Backend::trajectories, 99};
    CHECK_THROWS_AS(run_noisy(seq, traj, [](std::uint64_t) { return true; }, 0, 0),
                    ParameterError);
}

TEST_CASE("a single trajectory is a normalized pure state")
{
    MarkedOracle f = marked_oracle(3, "010");
    GateSequence seq = long_circuit(f);
    Rng rng(123);
    PureState st = evolve_trajectory(seq, amplitude_damping(0.1), rng);
    CHECK(std::fabs(norm_sq(st) - 1.0) < 1e-9);
}
