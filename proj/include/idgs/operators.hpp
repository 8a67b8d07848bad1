// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include "idgs/gates.hpp"
#include "idgs/oracle.hpp"

namespace idgs {

// A search operator is a suffix diffusion composed with a phase oracle:
//
//   op = [ (1 - e^{i*theta})|u><u| - I  on the trailing suffix_width qubits ]
//        after multiplying marked states by e^{i*phi}.
//
// The kind records where the operator sits in a pipeline; the action is fully
// determined by (oracle, suffix_width, theta, phi).
//
//   G, G2          full-width reflection, theta = phi = pi
//   G1, G3         suffix reflection (width m - prefix), theta = phi = pi
//   Gg, G4         full-width closing rotation with general (theta, phi)
//   L              full-width rotation with theta = phi = omega
enum class OpKind { G, G1, G2, G3, G4, Gg, L };

struct SearchOperator {
    OpKind kind;
    MarkedOracle oracle;
    int suffix_width;
    double theta;
    double phi;
};

SearchOperator make_g(MarkedOracle oracle);
SearchOperator make_g1(MarkedOracle oracle, int prefix);
SearchOperator make_g2(MarkedOracle oracle);
SearchOperator make_g3(MarkedOracle oracle, int prefix);
SearchOperator make_g4(MarkedOracle oracle, double theta, double phi);
SearchOperator make_gg(MarkedOracle oracle, double theta, double phi);
SearchOperator make_l(MarkedOracle oracle, double omega);

// Dense (statevector) application; exact for any marked-set size.
PureState apply_search_operator(PureState state, const SearchOperator& op);

// Gate realization. The phase oracle becomes X-conjugated MCP over the full
// register (empty marked set compiles to no oracle gates); the diffusion
// becomes H / X / MCP(theta) / X / H on the suffix plus a GPhase(pi), which
// makes the simulated sequence equal apply_search_operator exactly.
// Requires |marked| <= 1.
GateSequence compile_operator(const SearchOperator& op);

// The oracle half alone: diag with e^{i*phi} on the marked string.
GateSequence compile_phase_oracle(const MarkedOracle& f, double phi);

// Bit-flip form on m + 1 qubits (ancilla last): |x>|b> -> |x>|b xor f(x)>.
// Built as an X-conjugated multi-controlled X; self-inverse.
GateSequence compile_bit_oracle(const MarkedOracle& f);

// Phase oracle for the subfunction f_id, synthesized from a bit-flip oracle
// for f on n + 1 qubits (inputs x || i, ancilla last): X gates pin the
// trailing k input qubits to id.i, the bit oracle runs, P(alpha) hits the
// ancilla, and both preparations are undone. On |x>|0^k>|0> the result is
// e^{i*alpha*f_id(x)}|x>|0^k>|0>.
GateSequence synthesize_subfunction_phase_oracle(const GateSequence& bit_oracle,
                                                 const SubfunctionId& id, double alpha);

} // namespace idgs
