// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "idgs/operators.hpp"
#include "idgs/planner.hpp"
#include "idgs/rng.hpp"

namespace idgs {

// Result of one measured pipeline stage. final_state is retained so property
// tests can inspect amplitudes. success_prob is computed exactly from the
// state: the probability of the target-derived outcome when the oracle has
// one marked item, otherwise the probability of the sampled outcome.
struct StageResult {
    std::string measured; // MSB-first; width depends on the stage
    PureState final_state;
    double success_prob;
};

// Deterministic full-width search; runs with an empty marked set too (the
// state stays uniform and success_prob is 2^{-m}).
StageResult run_long(const MarkedOracle& f, std::uint64_t seed);

// Two-block partial search: G x j1, suffix reflection x j2, one more G,
// measure the leading q qubits. High success, not exact. Requires
// |marked| = 1 and 1 <= q < n.
StageResult run_grk(const MarkedOracle& f, int q, std::uint64_t seed);

// Exact partial search: p1 full reflections, p2 suffix reflections, one
// closing rotation; the leading q qubits then read the target prefix with
// probability 1. No seed: the measurement is degenerate. Requires
// |marked| = 1 and a feasible (n, q).
StageResult run_exact_partial(const MarkedOracle& f, int q, bool mirrored = false);

// Stage 1 of the distributed search on the n - k qubit subfunction: same
// schedule as run_exact_partial but tolerates an empty marked set (non-target
// nodes), whose prefix readout stays exactly uniform.
StageResult idgs_stage1(const MarkedOracle& f_i, int p, std::uint64_t seed, bool mirrored = false);

// Stage 2 finishes the suffix register: a deterministic full-width search on
// the prefix-restricted subfunction.
StageResult idgs_stage2(const MarkedOracle& f_restricted, std::uint64_t seed);

// Rng-stream variants so a caller can draw several stages from one stream.
StageResult run_long_rng(const MarkedOracle& f, Rng& rng);
StageResult idgs_stage1_rng(const MarkedOracle& f_i, int p, Rng& rng, bool mirrored = false);

// Whole-pipeline compiled circuits, uniform preparation included; these are
// what the noise backends evolve.
GateSequence long_circuit(const MarkedOracle& f);
GateSequence stage1_circuit(const MarkedOracle& f_i, int p, bool mirrored = false);

} // namespace idgs
