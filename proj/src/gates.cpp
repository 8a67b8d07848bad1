// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "idgs/gates.hpp"

#include <cmath>
#include <cstdio>

#include "idgs/bits.hpp"

namespace idgs {

namespace {

const double kSqrtHalf = std::sqrt(0.5);

void check_qubit(int q, int width, const char* what)
{
    if (q < 0 || q >= width)
        throw ParameterError(std::string(what) + ": qubit index out of range");
}

// Index bit mask of a qubit (qubit 0 = MSB).
std::uint64_t qmask(int q, int width)
{
    return 1ull << (width - 1 - q);
}

const char* kind_name(GateKind k)
{
    switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::CNOT: return "CNOT";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "TDG";
    case GateKind::P: return "P";
    case GateKind::MCP: return "MCP";
    case GateKind::GPhase: return "GPHASE";
    }
    return "?";
}

bool has_angle(GateKind k)
{
    return k == GateKind::P || k == GateKind::MCP || k == GateKind::GPhase;
}

} // namespace

Gate make_h(int q) { return Gate{GateKind::H, {q}, 0.0}; }
Gate make_x(int q) { return Gate{GateKind::X, {q}, 0.0}; }
Gate make_cnot(int c, int t)
{
    if (c == t)
        throw ParameterError("make_cnot: control equals target");
    return Gate{GateKind::CNOT, {c, t}, 0.0};
}
Gate make_t(int q) { return Gate{GateKind::T, {q}, 0.0}; }
Gate make_tdg(int q) { return Gate{GateKind::Tdg, {q}, 0.0}; }
Gate make_p(int q, double angle) { return Gate{GateKind::P, {q}, angle}; }
Gate make_mcp(std::vector<int> qubits, double angle)
{
    if (qubits.empty())
        throw ParameterError("make_mcp: needs at least one qubit");
    return Gate{GateKind::MCP, std::move(qubits), angle};
}
Gate make_gphase(double angle) { return Gate{GateKind::GPhase, {}, angle}; }

PureState simulate(const GateSequence& seq, PureState state)
{
    if (seq.width != state.m)
        throw ParameterError("simulate: sequence and state widths differ");
    const std::uint64_t n = state.size();
    for (const Gate& g : seq.gates) {
        for (int q : g.qubits)
            check_qubit(q, seq.width, "simulate");
        switch (g.kind) {
        case GateKind::H: {
            std::uint64_t h = qmask(g.qubits[0], seq.width);
            for (std::uint64_t x = 0; x < n; ++x)
                if (!(x & h)) {
                    cplx a = state.amp[x], b = state.amp[x | h];
                    state.amp[x] = (a + b) * kSqrtHalf;
                    state.amp[x | h] = (a - b) * kSqrtHalf;
                }
            break;
        }
        case GateKind::X: {
            std::uint64_t h = qmask(g.qubits[0], seq.width);
            for (std::uint64_t x = 0; x < n; ++x)
                if (!(x & h))
                    std::swap(state.amp[x], state.amp[x | h]);
            break;
        }
        case GateKind::CNOT: {
            std::uint64_t c = qmask(g.qubits[0], seq.width);
            std::uint64_t t = qmask(g.qubits[1], seq.width);
            for (std::uint64_t x = 0; x < n; ++x)
                if ((x & c) && !(x & t))
                    std::swap(state.amp[x], state.amp[x | t]);
            break;
        }
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::P: {
            double ang = g.kind == GateKind::P ? g.angle
                                               : (g.kind == GateKind::T ? M_PI / 4 : -M_PI / 4);
            cplx w = std::polar(1.0, ang);
            std::uint64_t h = qmask(g.qubits[0], seq.width);
            for (std::uint64_t x = 0; x < n; ++x)
                if (x & h)
                    state.amp[x] *= w;
            break;
        }
        case GateKind::MCP: {
            std::uint64_t mask = 0;
            for (int q : g.qubits)
                mask |= qmask(q, seq.width);
            cplx w = std::polar(1.0, g.angle);
            for (std::uint64_t x = 0; x < n; ++x)
                if ((x & mask) == mask)
                    state.amp[x] *= w;
            break;
        }
        case GateKind::GPhase: {
            cplx w = std::polar(1.0, g.angle);
            for (std::uint64_t x = 0; x < n; ++x)
                state.amp[x] *= w;
            break;
        }
        }
    }
    return state;
}

std::string serialize(const GateSequence& seq)
{
    std::string out;
    char buf[64];
    for (const Gate& g : seq.gates) {
        out += kind_name(g.kind);
        for (int q : g.qubits) {
            std::snprintf(buf, sizeof buf, " %d", q);
            out += buf;
        }
        if (has_angle(g.kind)) {
            std::snprintf(buf, sizeof buf, " %.17g", g.angle);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

} // namespace idgs
