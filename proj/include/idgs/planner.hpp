// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <utility>

#include "idgs/errors.hpp"

namespace idgs {

// Deterministic full-width search schedule: J + 1 applications of the
// rotation operator with phase omega on an m-qubit register drive the target
// probability to exactly 1. J is the smallest value for which omega exists.
struct LongParams {
    int m;
    long long J;
    long long iterations; // J + 1
    double omega;         // in (0, pi]
    double lambda;        // arcsin(2^{-m/2})
};

// Two-block partial-search schedule: j1 full reflections, j2 suffix
// reflections, one more full reflection, then measure the leading q qubits.
struct GrkParams {
    int n;
    int q;
    double alpha_q; // >= beta_q >= 0
    double beta_q;
    long long j1; // >= 0 after rounding, else rejected
    long long j2;
};

// Amplitude bookkeeping for the exact two-stage schedule on `width` qubits
// with a `prefix`-qubit readout. After p1 full and p2 suffix reflections the
// state is determined by four reals: the target amplitude a_t, the remaining
// target-block component a_nt, the non-target amplitude sum E, and the
// per-item non-target amplitude F.
struct PartialParams {
    int width;
    int prefix;
    long long p1;
    long long p2;
    double theta1;      // arcsin(2^{-width/2})
    double theta_prime; // arcsin(2^{-(width-prefix)/2})
    double gamma;       // full-reflection offset coefficient
    double eta;         // suffix-reflection count coefficient
    double a_t;
    double a_nt;
    double E;
    double F;
};

// Complete per-node plan of the two-stage distributed search. Stage 1 runs
// on n - k qubits and measures p of them; stage 2 finishes the remaining
// n - p - k qubits deterministically.
struct IdgsPlan {
    int n;
    int k;
    int p;
    long long p1;
    long long p2;
    double theta1;
    double theta_prime;
    double gamma_p;
    double eta_p;
    double a_t;
    double a_nt;
    double E;
    double F;
    double theta; // closing-rotation diffusion phase
    double phi;   // closing-rotation oracle phase
    LongParams stage2;
};

LongParams long_params(int m);

// (alpha_q, beta_q); q = 1 uses the closed-form limit values.
std::pair<double, double> alpha_beta(int q);

GrkParams grk_params(int n, int q);

PartialParams partial_params(int width, int prefix);

// The closing rotation exists iff (E - 2^{width-1} F)^2 <= a_t^2.
bool phase_feasible(double E, double F, double a_t, int width);

// Solves the cancellation system for (theta, phi). theta in [0, pi] by
// default; the sign of phi makes a_t * sin(phi) * sin(theta) > 0 (vacuous on
// the sin(theta) = 0 boundary). mirrored negates both angles, the conjugate
// solution. |cos| beyond 1 + 1e-12 raises NumericDomainError; within the
// tolerance it is clamped.
std::pair<double, double> solve_phases(double E, double F, double a_t, int width,
                                       bool mirrored = false);

IdgsPlan idgs_plan(int n, int k, int p, bool mirrored = false);

// Leading query-count coefficient as a function of the block size x = 2^p;
// increasing for x >= 16, which certifies that p = 4 minimizes it.
double query_coefficient(double x);

} // namespace idgs
