// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "idgs/state.hpp"

namespace idgs {

// Gate vocabulary for compiled circuits.
//
// MCP multiplies by e^{i*angle} the basis states in which every listed qubit
// is 1; with a single listed qubit it is a plain phase gate. GPhase is an
// angle-only element recording a global phase: it lets compiled sequences
// equal their semantic operators exactly rather than up to phase. GPhase
// touches no qubits, so noise placement skips it, but it does count as a
// sequence element.
enum class GateKind { H, X, CNOT, T, Tdg, P, MCP, GPhase };

struct Gate {
    GateKind kind;
    std::vector<int> qubits; // empty for GPhase; {control, target} for CNOT
    double angle = 0.0;      // P, MCP, GPhase only
};

struct GateSequence {
    int width = 0;
    std::vector<Gate> gates;
};

Gate make_h(int q);
Gate make_x(int q);
Gate make_cnot(int c, int t);
Gate make_t(int q);
Gate make_tdg(int q);
Gate make_p(int q, double angle);
Gate make_mcp(std::vector<int> qubits, double angle);
Gate make_gphase(double angle);

// Applies the sequence left to right. Qubit indices follow the library
// convention (qubit 0 = most significant).
PureState simulate(const GateSequence& seq, PureState state);

// One gate per line: NAME q0 [q1 ...] [angle], angles in full precision.
std::string serialize(const GateSequence& seq);

} // namespace idgs
