// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "idgs/operators.hpp"

#include <cmath>

namespace idgs {

namespace {

void check_prefix(const MarkedOracle& oracle, int prefix, const char* what)
{
    if (prefix < 1 || prefix >= oracle.m)
        throw ParameterError(std::string(what) + ": prefix must satisfy 1 <= prefix < m");
}

} // namespace

SearchOperator make_g(MarkedOracle oracle)
{
    int m = oracle.m;
    return SearchOperator{OpKind::G, std::move(oracle), m, M_PI, M_PI};
}

SearchOperator make_g1(MarkedOracle oracle, int prefix)
{
    check_prefix(oracle, prefix, "make_g1");
    int m = oracle.m;
    return SearchOperator{OpKind::G1, std::move(oracle), m - prefix, M_PI, M_PI};
}

SearchOperator make_g2(MarkedOracle oracle)
{
    int m = oracle.m;
    return SearchOperator{OpKind::G2, std::move(oracle), m, M_PI, M_PI};
}

SearchOperator make_g3(MarkedOracle oracle, int prefix)
{
    check_prefix(oracle, prefix, "make_g3");
    int m = oracle.m;
    return SearchOperator{OpKind::G3, std::move(oracle), m - prefix, M_PI, M_PI};
}

SearchOperator make_g4(MarkedOracle oracle, double theta, double phi)
{
    int m = oracle.m;
    return SearchOperator{OpKind::G4, std::move(oracle), m, theta, phi};
}

SearchOperator make_gg(MarkedOracle oracle, double theta, double phi)
{
    int m = oracle.m;
    return SearchOperator{OpKind::Gg, std::move(oracle), m, theta, phi};
}

SearchOperator make_l(MarkedOracle oracle, double omega)
{
    int m = oracle.m;
    return SearchOperator{OpKind::L, std::move(oracle), m, omega, omega};
}

PureState apply_search_operator(PureState state, const SearchOperator& op)
{
    if (state.m != op.oracle.m)
        throw ParameterError("apply_search_operator: state and oracle widths differ");
    // Phase the marked strings directly; the oracle's set is explicit.
    cplx w = std::polar(1.0, op.phi);
    for (std::uint64_t t : op.oracle.marked)
        state.amp[t] *= w;
    return apply_suffix_diffusion(std::move(state), op.suffix_width, op.theta);
}

GateSequence compile_phase_oracle(const MarkedOracle& f, double phi)
{
    if (f.marked.size() > 1)
        throw ParameterError("compile_phase_oracle: at most one marked item is compilable");
    GateSequence seq;
    seq.width = f.m;
    if (f.marked.empty())
        return seq; // the zero function: no gates
    std::uint64_t t = f.marked[0];
    std::vector<int> zeros;
    for (int q = 0; q < f.m; ++q)
        if (bit_at(t, f.m, q) == 0)
            zeros.push_back(q);
    std::vector<int> all(std::size_t(f.m));
    for (int q = 0; q < f.m; ++q)
        all[std::size_t(q)] = q;
    for (int q : zeros)
        seq.gates.push_back(make_x(q));
    seq.gates.push_back(make_mcp(all, phi));
    for (int q : zeros)
        seq.gates.push_back(make_x(q));
    return seq;
}

GateSequence compile_bit_oracle(const MarkedOracle& f)
{
    if (f.marked.size() > 1)
        throw ParameterError("compile_bit_oracle: at most one marked item is compilable");
    GateSequence seq;
    seq.width = f.m + 1;
    if (f.marked.empty())
        return seq;
    std::uint64_t t = f.marked[0];
    int anc = f.m; // last qubit
    std::vector<int> zeros;
    for (int q = 0; q < f.m; ++q)
        if (bit_at(t, f.m, q) == 0)
            zeros.push_back(q);
    std::vector<int> all(std::size_t(f.m) + 1);
    for (int q = 0; q <= f.m; ++q)
        all[std::size_t(q)] = q;
    for (int q : zeros)
        seq.gates.push_back(make_x(q));
    // Multi-controlled X on the ancilla as H-conjugated full-register MCP(pi).
    seq.gates.push_back(make_h(anc));
    seq.gates.push_back(make_mcp(all, M_PI));
    seq.gates.push_back(make_h(anc));
    for (int q : zeros)
        seq.gates.push_back(make_x(q));
    return seq;
}

GateSequence compile_operator(const SearchOperator& op)
{
    GateSequence seq = compile_phase_oracle(op.oracle, op.phi);
    int w = op.oracle.m;
    int s = op.suffix_width;
    std::vector<int> suffix;
    for (int j = 0; j < s; ++j)
        suffix.push_back(w - s + j);
    for (int q : suffix)
        seq.gates.push_back(make_h(q));
    for (int q : suffix)
        seq.gates.push_back(make_x(q));
    seq.gates.push_back(make_mcp(suffix, op.theta));
    for (int q : suffix)
        seq.gates.push_back(make_x(q));
    for (int q : suffix)
        seq.gates.push_back(make_h(q));
    // H X . MCP(theta) . X H realizes I + (e^{i*theta}-1)|u><u|; the global
    // minus sign turns it into the diffusion (1 - e^{i*theta})|u><u| - I.
    seq.gates.push_back(make_gphase(M_PI));
    return seq;
}

GateSequence synthesize_subfunction_phase_oracle(const GateSequence& bit_oracle,
                                                 const SubfunctionId& id, double alpha)
{
    int total = bit_oracle.width; // n + 1
    int n = total - 1;
    if (n < 1)
        throw ParameterError("synthesize_subfunction_phase_oracle: bit oracle too narrow");
    if (id.k < 0 || id.k >= n)
        throw ParameterError("synthesize_subfunction_phase_oracle: k must satisfy 0 <= k < n");
    if (id.k < 63 && (id.i >> id.k) != 0)
        throw ParameterError("synthesize_subfunction_phase_oracle: i does not fit in k bits");
    GateSequence seq;
    seq.width = total;
    // The trailing k input qubits are the pinned register: qubits n-k .. n-1.
    std::vector<int> prep;
    for (int j = 0; j < id.k; ++j)
        if (bit_at(id.i, id.k, j) == 1)
            prep.push_back(n - id.k + j);
    for (int q : prep)
        seq.gates.push_back(make_x(q));
    for (const Gate& g : bit_oracle.gates)
        seq.gates.push_back(g);
    seq.gates.push_back(make_p(n, alpha)); // ancilla carries f for one phase
    for (const Gate& g : bit_oracle.gates)
        seq.gates.push_back(g); // the bit oracle squares to identity
    for (int q : prep)
        seq.gates.push_back(make_x(q));
    return seq;
}

} // namespace idgs
