// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "idgs/noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

namespace idgs {

namespace {

std::uint64_t qmask(int q, int width)
{
    return 1ull << (width - 1 - q);
}

void check_gamma(double gamma)
{
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw ParameterError("noise channel: gamma must lie in [0, 1]");
}

// ---- density-matrix passes ------------------------------------------------
//
// rho is row-major over dim = 2^w. All passes below are exact; the "fused"
// ones exploit that superoperators acting on disjoint qubits commute, so a
// run of single-qubit gates on distinct qubits may be applied as one batch
// followed by all of its per-qubit channels.

// rho <- P rho P with P = X on every qubit in `mask` (index-XOR permutation).
void rho_x_mask(MixedState& rho, std::uint64_t mask)
{
    std::size_t dim = rho.dim();
    cplx* r = rho.rho.data();
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t i2 = i ^ mask;
        if (i < i2)
            std::swap_ranges(r + i * dim, r + (i + 1) * dim, r + i2 * dim);
    }
    for (std::size_t i = 0; i < dim; ++i) {
        cplx* row = r + i * dim;
        for (std::size_t j = 0; j < dim; ++j) {
            std::size_t j2 = j ^ mask;
            if (j < j2)
                std::swap(row[j], row[j2]);
        }
    }
}

// rho <- U rho U^dag for U = H on every qubit in `mask`. Row side works on
// column stripes so the butterflies over all mask bits stay cache-resident;
// the column side transforms one contiguous row at a time.
void rho_wht(MixedState& rho, std::uint64_t mask, int width)
{
    std::size_t dim = rho.dim();
    cplx* r = rho.rho.data();
    const double s = std::sqrt(0.5);
    const std::size_t stripe = 64;
    for (std::size_t c0 = 0; c0 < dim; c0 += stripe) {
        std::size_t cw = std::min(stripe, dim - c0);
        for (int b = 0; b < width; ++b) {
            std::size_t h = std::size_t(1) << b;
            if (!(mask & h))
                continue;
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & h)
                    continue;
                cplx* row0 = r + i * dim + c0;
                cplx* row1 = r + (i | h) * dim + c0;
                for (std::size_t c = 0; c < cw; ++c) {
                    cplx a = row0[c], b2 = row1[c];
                    row0[c] = (a + b2) * s;
                    row1[c] = (a - b2) * s;
                }
            }
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        cplx* row = r + i * dim;
        for (int b = 0; b < width; ++b) {
            std::size_t h = std::size_t(1) << b;
            if (!(mask & h))
                continue;
            for (std::size_t j = 0; j < dim; ++j) {
                if (j & h)
                    continue;
                cplx a = row[j], b2 = row[j | h];
                row[j] = (a + b2) * s;
                row[j | h] = (a - b2) * s;
            }
        }
    }
}

// Diagonal phase: rho_{ij} *= e^{i*ang*(chi_i - chi_j)} with chi = [all bits
// of `mask` set].
void rho_mcp(MixedState& rho, std::uint64_t mask, double ang)
{
    std::size_t dim = rho.dim();
    cplx* r = rho.rho.data();
    cplx w = std::polar(1.0, ang);
    cplx wc = std::conj(w);
    for (std::size_t i = 0; i < dim; ++i) {
        bool fi = (i & mask) == mask;
        cplx* row = r + i * dim;
        for (std::size_t j = 0; j < dim; ++j) {
            bool fj = (j & mask) == mask;
            if (fi != fj)
                row[j] *= fi ? w : wc;
        }
    }
}

// Generic single-qubit unitary, rows then columns.
void rho_unitary2(MixedState& rho, const cplx u[2][2], std::uint64_t h)
{
    std::size_t dim = rho.dim();
    cplx* r = rho.rho.data();
    cplx u00 = u[0][0], u01 = u[0][1], u10 = u[1][0], u11 = u[1][1];
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & h)
            continue;
        cplx* row0 = r + i * dim;
        cplx* row1 = r + (i | h) * dim;
        for (std::size_t c = 0; c < dim; ++c) {
            cplx a = row0[c], b = row1[c];
            row0[c] = u00 * a + u01 * b;
            row1[c] = u10 * a + u11 * b;
        }
    }
    cplx c00 = std::conj(u00), c01 = std::conj(u01), c10 = std::conj(u10), c11 = std::conj(u11);
    for (std::size_t i = 0; i < dim; ++i) {
        cplx* row = r + i * dim;
        for (std::size_t j = 0; j < dim; ++j) {
            if (j & h)
                continue;
            cplx a = row[j], b = row[j | h];
            row[j] = a * c00 + b * c01;
            row[j | h] = a * c10 + b * c11;
        }
    }
}

// CNOT is the permutation that XORs the target bit where the control is set.
void rho_cnot(MixedState& rho, std::uint64_t c, std::uint64_t t)
{
    std::size_t dim = rho.dim();
    cplx* r = rho.rho.data();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) && !(i & t))
            std::swap_ranges(r + i * dim, r + (i + 1) * dim, r + (i | t) * dim);
    }
    for (std::size_t i = 0; i < dim; ++i) {
        cplx* row = r + i * dim;
        for (std::size_t j = 0; j < dim; ++j)
            if ((j & c) && !(j & t))
                std::swap(row[j], row[j | t]);
    }
}

// Amplitude damping on one qubit, single pass over 2x2 blocks.
void rho_ad(MixedState& rho, double gamma, std::uint64_t h)
{
    std::size_t dim = rho.dim();
    cplx* r = rho.rho.data();
    double s = std::sqrt(1.0 - gamma);
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & h)
            continue;
        cplx* row0 = r + i * dim;
        cplx* row1 = r + (i | h) * dim;
        for (std::size_t j = 0; j < dim; ++j) {
            if (j & h)
                continue;
            cplx r00 = row0[j], r01 = row0[j | h];
            cplx r10 = row1[j], r11 = row1[j | h];
            row0[j] = r00 + gamma * r11;
            row0[j | h] = s * r01;
            row1[j] = s * r10;
            row1[j | h] = (1.0 - gamma) * r11;
        }
    }
}

// Phase damping on every qubit in `mask` at once: the off-diagonal entry
// (i, j) shrinks by sqrt(1-gamma) per differing masked bit. The factor only
// depends on i ^ j, so one dim-sized table turns the pass into a lookup.
void rho_pd_mask(MixedState& rho, double gamma, std::uint64_t mask, int width)
{
    if (gamma == 0.0)
        return;
    std::size_t dim = rho.dim();
    cplx* r = rho.rho.data();
    double s = std::sqrt(1.0 - gamma);
    double pw[64];
    pw[0] = 1.0;
    for (int c = 1; c <= width; ++c)
        pw[c] = pw[c - 1] * s;
    std::vector<double> table(dim);
    for (std::size_t d = 0; d < dim; ++d)
        table[d] = pw[std::popcount(d & mask)];
    for (std::size_t i = 0; i < dim; ++i) {
        cplx* row = r + i * dim;
        for (std::size_t j = 0; j < dim; ++j)
            row[j] *= table[i ^ j];
    }
}

// Generic Kraus application on one qubit via independent 2x2 blocks.
void rho_kraus(MixedState& rho, const KrausChannel& ch, std::uint64_t h)
{
    std::size_t dim = rho.dim();
    cplx* r = rho.rho.data();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & h)
            continue;
        cplx* row0 = r + i * dim;
        cplx* row1 = r + (i | h) * dim;
        for (std::size_t j = 0; j < dim; ++j) {
            if (j & h)
                continue;
            cplx b00 = row0[j], b01 = row0[j | h];
            cplx b10 = row1[j], b11 = row1[j | h];
            cplx n00 = 0, n01 = 0, n10 = 0, n11 = 0;
            for (const Kraus2& k : ch.ops) {
                cplx e00 = k.e[0][0], e01 = k.e[0][1], e10 = k.e[1][0], e11 = k.e[1][1];
                cplx t00 = e00 * b00 + e01 * b10;
                cplx t01 = e00 * b01 + e01 * b11;
                cplx t10 = e10 * b00 + e11 * b10;
                cplx t11 = e10 * b01 + e11 * b11;
                n00 += t00 * std::conj(e00) + t01 * std::conj(e01);
                n01 += t00 * std::conj(e10) + t01 * std::conj(e11);
                n10 += t10 * std::conj(e00) + t11 * std::conj(e01);
                n11 += t10 * std::conj(e10) + t11 * std::conj(e11);
            }
            row0[j] = n00;
            row0[j | h] = n01;
            row1[j] = n10;
            row1[j | h] = n11;
        }
    }
}

void density_channels(MixedState& rho, const KrausChannel& ch, const std::vector<int>& qubits,
                      int width)
{
    if (qubits.empty())
        return;
    if (ch.label == KrausChannel::Label::phase_damping) {
        std::uint64_t mask = 0;
        for (int q : qubits)
            mask |= qmask(q, width);
        rho_pd_mask(rho, ch.gamma, mask, width);
        return;
    }
    for (int q : qubits) {
        std::uint64_t h = qmask(q, width);
        if (ch.label == KrausChannel::Label::amplitude_damping)
            rho_ad(rho, ch.gamma, h);
        else
            rho_kraus(rho, ch, h);
    }
}

// ---- trajectory passes ----------------------------------------------------
//
// The walker keeps the statevector unnormalized and tracks its squared norm,
// so each sampled channel costs one strided read pass plus one branch pass.

struct Trajectory {
    PureState st;
    double norm2 = 1.0;
};

double half_norm(const PureState& st, std::uint64_t h)
{
    double acc = 0.0;
    std::uint64_t n = st.size();
    for (std::uint64_t base = 0; base < n; base += 2 * h)
        for (std::uint64_t off = 0; off < h; ++off)
            acc += std::norm(st.amp[base + off + h]);
    return acc;
}

void traj_channel(Trajectory& tr, const KrausChannel& ch, std::uint64_t h, Rng& rng)
{
    std::uint64_t n = tr.st.size();
    if (ch.label == KrausChannel::Label::custom) {
        // General sampling; keeps the state normalized on this slow path.
        double inv = 1.0 / std::sqrt(tr.norm2);
        for (cplx& a : tr.st.amp)
            a *= inv;
        tr.norm2 = 1.0;
        double u = rng.uniform();
        double acc = 0.0;
        for (std::size_t k = 0; k < ch.ops.size(); ++k) {
            const Kraus2& e = ch.ops[k];
            PureState cand = tr.st;
            for (std::uint64_t base = 0; base < n; base += 2 * h)
                for (std::uint64_t off = 0; off < h; ++off) {
                    std::uint64_t x0 = base + off, x1 = x0 + h;
                    cplx a = tr.st.amp[x0], b = tr.st.amp[x1];
                    cand.amp[x0] = e.e[0][0] * a + e.e[0][1] * b;
                    cand.amp[x1] = e.e[1][0] * a + e.e[1][1] * b;
                }
            double pk = norm_sq(cand);
            acc += pk;
            if (u < acc || k + 1 == ch.ops.size()) {
                double s = pk > 0.0 ? 1.0 / std::sqrt(pk) : 0.0;
                for (cplx& a : cand.amp)
                    a *= s;
                tr.st = std::move(cand);
                return;
            }
        }
        return;
    }
    double gamma = ch.gamma;
    double s1 = half_norm(tr.st, h);
    double jump_p = gamma * s1; // unnormalized: compare against norm2-scaled draw
    double u = rng.uniform() * tr.norm2;
    bool ad = ch.label == KrausChannel::Label::amplitude_damping;
    if (u < jump_p) {
        if (ad) {
            // |1> decays to |0>; the 1-half moves down scaled by sqrt(gamma).
            double sg = std::sqrt(gamma);
            for (std::uint64_t base = 0; base < n; base += 2 * h)
                for (std::uint64_t off = 0; off < h; ++off) {
                    std::uint64_t x0 = base + off, x1 = x0 + h;
                    tr.st.amp[x0] = sg * tr.st.amp[x1];
                    tr.st.amp[x1] = 0.0;
                }
        } else {
            // Phase-damping jump projects onto |1> (scaled).
            double sg = std::sqrt(gamma);
            for (std::uint64_t base = 0; base < n; base += 2 * h)
                for (std::uint64_t off = 0; off < h; ++off) {
                    std::uint64_t x0 = base + off, x1 = x0 + h;
                    tr.st.amp[x0] = 0.0;
                    tr.st.amp[x1] *= sg;
                }
        }
        tr.norm2 = jump_p;
    } else {
        double sq = std::sqrt(1.0 - gamma);
        for (std::uint64_t base = 0; base < n; base += 2 * h)
            for (std::uint64_t off = 0; off < h; ++off)
                tr.st.amp[base + off + h] *= sq;
        tr.norm2 -= jump_p;
    }
}

void traj_gate(Trajectory& tr, const Gate& g, int width)
{
    std::uint64_t n = tr.st.size();
    switch (g.kind) {
    case GateKind::H: {
        std::uint64_t h = qmask(g.qubits[0], width);
        const double s = std::sqrt(0.5);
        for (std::uint64_t base = 0; base < n; base += 2 * h)
            for (std::uint64_t off = 0; off < h; ++off) {
                std::uint64_t x0 = base + off, x1 = x0 + h;
                cplx a = tr.st.amp[x0], b = tr.st.amp[x1];
                tr.st.amp[x0] = (a + b) * s;
                tr.st.amp[x1] = (a - b) * s;
            }
        break;
    }
    case GateKind::X: {
        std::uint64_t h = qmask(g.qubits[0], width);
        for (std::uint64_t base = 0; base < n; base += 2 * h)
            for (std::uint64_t off = 0; off < h; ++off)
                std::swap(tr.st.amp[base + off], tr.st.amp[base + off + h]);
        break;
    }
    case GateKind::CNOT: {
        std::uint64_t c = qmask(g.qubits[0], width);
        std::uint64_t t = qmask(g.qubits[1], width);
        for (std::uint64_t x = 0; x < n; ++x)
            if ((x & c) && !(x & t))
                std::swap(tr.st.amp[x], tr.st.amp[x | t]);
        break;
    }
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::P: {
        double ang = g.kind == GateKind::P ? g.angle
                                           : (g.kind == GateKind::T ? M_PI / 4 : -M_PI / 4);
        cplx w = std::polar(1.0, ang);
        std::uint64_t h = qmask(g.qubits[0], width);
        for (std::uint64_t base = 0; base < n; base += 2 * h)
            for (std::uint64_t off = 0; off < h; ++off)
                tr.st.amp[base + off + h] *= w;
        break;
    }
    case GateKind::MCP: {
        std::uint64_t mask = 0;
        for (int q : g.qubits)
            mask |= qmask(q, width);
        cplx w = std::polar(1.0, g.angle);
        // Indices with all mask bits set: iterate the complement's subsets.
        std::uint64_t rest = (n - 1) & ~mask;
        std::uint64_t sub = 0;
        while (true) {
            tr.st.amp[sub | mask] *= w;
            if (sub == rest)
                break;
            sub = (sub - rest) & rest;
        }
        break;
    }
    case GateKind::GPhase: {
        cplx w = std::polar(1.0, g.angle);
        for (cplx& a : tr.st.amp)
            a *= w;
        break;
    }
    }
}

} // namespace

KrausChannel amplitude_damping(double gamma)
{
    check_gamma(gamma);
    KrausChannel ch;
    ch.label = KrausChannel::Label::amplitude_damping;
    ch.gamma = gamma;
    ch.ops.resize(2);
    ch.ops[0].e = {{{cplx(1, 0), cplx(0, 0)}, {cplx(0, 0), cplx(std::sqrt(1.0 - gamma), 0)}}};
    ch.ops[1].e = {{{cplx(0, 0), cplx(std::sqrt(gamma), 0)}, {cplx(0, 0), cplx(0, 0)}}};
    return ch;
}

KrausChannel phase_damping(double gamma)
{
    check_gamma(gamma);
    KrausChannel ch;
    ch.label = KrausChannel::Label::phase_damping;
    ch.gamma = gamma;
    ch.ops.resize(2);
    ch.ops[0].e = {{{cplx(1, 0), cplx(0, 0)}, {cplx(0, 0), cplx(std::sqrt(1.0 - gamma), 0)}}};
    ch.ops[1].e = {{{cplx(0, 0), cplx(0, 0)}, {cplx(0, 0), cplx(std::sqrt(gamma), 0)}}};
    return ch;
}

KrausChannel custom_channel(std::vector<Kraus2> ops)
{
    if (ops.empty())
        throw ParameterError("custom_channel: needs at least one Kraus operator");
    // Completeness: sum E^dag E = I within 1e-12.
    cplx s[2][2] = {{0, 0}, {0, 0}};
    for (const Kraus2& k : ops)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    s[a][b] += std::conj(k.e[c][a]) * k.e[c][b];
    double defect = std::max({std::abs(s[0][0] - 1.0), std::abs(s[1][1] - 1.0), std::abs(s[0][1]),
                              std::abs(s[1][0])});
    if (defect > 1e-12)
        throw ParameterError("custom_channel: Kraus operators are not trace-preserving");
    KrausChannel ch;
    ch.label = KrausChannel::Label::custom;
    ch.gamma = 0.0;
    ch.ops = std::move(ops);
    return ch;
}

MixedState apply_channel(MixedState rho, const KrausChannel& ch, int qubit)
{
    if (qubit < 0 || qubit >= rho.m)
        throw ParameterError("apply_channel: qubit out of range");
    std::uint64_t h = qmask(qubit, rho.m);
    switch (ch.label) {
    case KrausChannel::Label::amplitude_damping:
        rho_ad(rho, ch.gamma, h);
        break;
    case KrausChannel::Label::phase_damping:
        rho_pd_mask(rho, ch.gamma, h, rho.m);
        break;
    case KrausChannel::Label::custom:
        rho_kraus(rho, ch, h);
        break;
    }
    return rho;
}

MixedState evolve_density(const GateSequence& seq, const KrausChannel& ch)
{
    if (seq.width > kMaxMixedQubits)
        throw CapacityError("evolve_density: register exceeds the density-matrix ceiling; "
                            "use the trajectories backend");
    if (seq.width < 1)
        throw ParameterError("evolve_density: empty register");
    MixedState rho;
    rho.m = seq.width;
    std::size_t dim = rho.dim();
    rho.rho.assign(dim * dim, cplx(0, 0));
    rho.rho[0] = 1.0;

    // Pending run of single-qubit gates on pairwise distinct qubits; applied
    // as a batch, then all per-qubit channels. Exact by commutation.
    std::vector<Gate> pending;
    std::uint64_t pending_mask = 0;

    auto flush = [&]() {
        if (pending.empty())
            return;
        bool all_h = true, all_x = true;
        for (const Gate& g : pending) {
            all_h = all_h && g.kind == GateKind::H;
            all_x = all_x && g.kind == GateKind::X;
        }
        if (all_h) {
            rho_wht(rho, pending_mask, seq.width);
        } else if (all_x) {
            rho_x_mask(rho, pending_mask);
        } else {
            const double s = std::sqrt(0.5);
            for (const Gate& g : pending) {
                std::uint64_t h = qmask(g.qubits[0], seq.width);
                switch (g.kind) {
                case GateKind::H: {
                    cplx u[2][2] = {{s, s}, {s, -s}};
                    rho_unitary2(rho, u, h);
                    break;
                }
                case GateKind::X: {
                    cplx u[2][2] = {{0, 1}, {1, 0}};
                    rho_unitary2(rho, u, h);
                    break;
                }
                default: {
                    double ang = g.kind == GateKind::P
                                     ? g.angle
                                     : (g.kind == GateKind::T ? M_PI / 4 : -M_PI / 4);
                    rho_mcp(rho, h, ang);
                    break;
                }
                }
            }
        }
        std::vector<int> qubits;
        for (const Gate& g : pending)
            qubits.push_back(g.qubits[0]);
        density_channels(rho, ch, qubits, seq.width);
        pending.clear();
        pending_mask = 0;
    };

    for (const Gate& g : seq.gates) {
        bool single = g.kind == GateKind::H || g.kind == GateKind::X || g.kind == GateKind::T
                      || g.kind == GateKind::Tdg || g.kind == GateKind::P;
        if (single) {
            std::uint64_t h = qmask(g.qubits[0], seq.width);
            if (pending_mask & h)
                flush();
            pending.push_back(g);
            pending_mask |= h;
            continue;
        }
        flush();
        if (g.kind == GateKind::GPhase)
            continue; // no qubits touched, no channel
        if (g.kind == GateKind::CNOT) {
            rho_cnot(rho, qmask(g.qubits[0], seq.width), qmask(g.qubits[1], seq.width));
            density_channels(rho, ch, g.qubits, seq.width);
            continue;
        }
        // MCP
        std::uint64_t mask = 0;
        for (int q : g.qubits)
            mask |= qmask(q, seq.width);
        rho_mcp(rho, mask, g.angle);
        density_channels(rho, ch, g.qubits, seq.width);
    }
    flush();
    return rho;
}

PureState evolve_trajectory(const GateSequence& seq, const KrausChannel& ch, Rng& rng)
{
    if (seq.width < 1 || seq.width > kMaxPureQubits)
        throw CapacityError("evolve_trajectory: register width out of range");
    Trajectory tr;
    tr.st.m = seq.width;
    tr.st.amp.assign(std::size_t(1) << seq.width, cplx(0, 0));
    tr.st.amp[0] = 1.0;
    tr.norm2 = 1.0;
    for (const Gate& g : seq.gates) {
        traj_gate(tr, g, seq.width);
        for (int q : g.qubits)
            traj_channel(tr, ch, qmask(q, seq.width), rng);
    }
    double inv = 1.0 / std::sqrt(tr.norm2);
    for (cplx& a : tr.st.amp)
        a *= inv;
    return tr.st;
}

namespace {

long long trajectory_count(const NoiseSpec& spec, long long shots)
{
    long long t = shots > 0 ? shots : spec.trajectories;
    if (t < 100)
        throw ParameterError("trajectories backend: needs at least 100 trajectories");
    // At gamma = 0 no jump can fire, so all trajectories coincide.
    if (spec.channel.label != KrausChannel::Label::custom && spec.channel.gamma == 0.0)
        return 1;
    return t;
}

std::uint64_t trajectory_seed(std::uint64_t seed, long long t)
{
    return seed + 0x9e3779b97f4a7c15ull * std::uint64_t(t + 1);
}

// Runs fn(t) for t in [0, total) across threads; fn must only write slots
// indexed by t, so the result is schedule-independent.
void parallel_for(long long total, const std::function<void(long long)>& fn)
{
    unsigned hw = std::thread::hardware_concurrency();
    unsigned workers = std::min<unsigned>(hw == 0 ? 1 : hw, 8);
    if (workers <= 1 || total < 32) {
        for (long long t = 0; t < total; ++t)
            fn(t);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (long long t = w; t < total; t += workers)
                fn(t);
        });
    for (std::thread& th : pool)
        th.join();
}

} // namespace

namespace {

// A gamma = 0 channel is the identity, so the density walk collapses to a
// pure-state simulation.
bool noiseless(const KrausChannel& ch)
{
    return ch.label != KrausChannel::Label::custom && ch.gamma == 0.0;
}

PureState pure_from_zero(const GateSequence& seq)
{
    PureState z;
    z.m = seq.width;
    z.amp.assign(std::size_t(1) << seq.width, cplx(0, 0));
    z.amp[0] = 1.0;
    return simulate(seq, std::move(z));
}

} // namespace

std::vector<double> noisy_distribution(const GateSequence& seq, const NoiseSpec& spec,
                                       std::uint64_t seed, long long shots)
{
    if (spec.backend == NoiseSpec::Backend::density) {
        if (noiseless(spec.channel)) {
            PureState st = pure_from_zero(seq);
            std::vector<double> probs(st.size());
            for (std::size_t i = 0; i < st.size(); ++i)
                probs[i] = std::norm(st.amp[i]);
            return probs;
        }
        MixedState rho = evolve_density(seq, spec.channel);
        std::size_t dim = rho.dim();
        std::vector<double> probs(dim);
        for (std::size_t i = 0; i < dim; ++i)
            probs[i] = rho.rho[i * dim + i].real();
        return probs;
    }
    long long total = trajectory_count(spec, shots);
    std::vector<double> probs(std::size_t(1) << seq.width, 0.0);
    for (long long t = 0; t < total; ++t) {
        Rng rng(trajectory_seed(seed, t));
        PureState st = evolve_trajectory(seq, spec.channel, rng);
        for (std::size_t i = 0; i < st.size(); ++i)
            probs[i] += std::norm(st.amp[i]);
    }
    for (double& p : probs)
        p /= double(total);
    return probs;
}

NoisyResult run_noisy(const GateSequence& seq, const NoiseSpec& spec,
                      const std::function<bool(std::uint64_t)>& success, long long shots,
                      std::uint64_t seed)
{
    if (spec.backend == NoiseSpec::Backend::density) {
        if (noiseless(spec.channel)) {
            PureState st = pure_from_zero(seq);
            double acc = 0.0;
            for (std::size_t i = 0; i < st.size(); ++i)
                if (success(i))
                    acc += std::norm(st.amp[i]);
            return NoisyResult{acc, 0.0};
        }
        MixedState rho = evolve_density(seq, spec.channel);
        std::size_t dim = rho.dim();
        double acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            if (success(i))
                acc += rho.rho[i * dim + i].real();
        return NoisyResult{acc, 0.0};
    }
    long long total = trajectory_count(spec, shots);
    std::vector<double> per(static_cast<std::size_t>(total), 0.0);
    parallel_for(total, [&](long long t) {
        Rng rng(trajectory_seed(seed, t));
        PureState st = evolve_trajectory(seq, spec.channel, rng);
        double acc = 0.0;
        for (std::size_t i = 0; i < st.size(); ++i)
            if (success(i))
                acc += std::norm(st.amp[i]);
        per[std::size_t(t)] = acc;
    });
    double mean = 0.0;
    for (double v : per)
        mean += v;
    mean /= double(total);
    double var = 0.0;
    for (double v : per)
        var += (v - mean) * (v - mean);
    var /= double(total > 1 ? total - 1 : 1);
    return NoisyResult{mean, std::sqrt(var / double(total))};
}

double trace_of(const MixedState& rho)
{
    std::size_t dim = rho.dim();
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        acc += rho.rho[i * dim + i].real();
    return acc;
}

double hermiticity_defect(const MixedState& rho)
{
    std::size_t dim = rho.dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j)
            worst = std::max(worst, std::abs(rho.rho[i * dim + j]
                                             - std::conj(rho.rho[j * dim + i])));
    return worst;
}

} // namespace idgs
