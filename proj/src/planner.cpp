// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "idgs/planner.hpp"

#include <cmath>
#include <string>

#include "idgs/bits.hpp"

namespace idgs {

namespace {

// Clamp an inverse-trig argument that drifted past [-1, 1] by float dust;
// anything beyond the tolerance is a genuine domain violation.
double clamp_unit(double c, const char* what)
{
    if (std::fabs(c) > 1.0 + 1e-12)
        throw NumericDomainError(std::string(what) + ": |cos| = " + std::to_string(std::fabs(c))
                                 + " exceeds 1 beyond tolerance");
    return c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
}

} // namespace

LongParams long_params(int m)
{
    if (m < 1 || m > 63)
        throw ParameterError("long_params: register width out of range");
    double sin_lambda = std::pow(2.0, -m / 2.0);
    double lambda = std::asin(sin_lambda);
    // Smallest J with sin(pi/(4J+6)) <= sin(lambda); the closed form can sit
    // exactly on the boundary, so nudge down and repair with the predicate.
    long long J = (long long)std::ceil(M_PI / (4.0 * lambda) - 1.5 - 1e-9);
    if (J < 0)
        J = 0;
    while (std::sin(M_PI / double(4 * J + 6)) > sin_lambda + 1e-12)
        ++J;
    double omega = 2.0 * std::asin(clamp_unit(std::sin(M_PI / double(4 * J + 6)) / sin_lambda,
                                              "long_params"));
    return LongParams{m, J, J + 1, omega, lambda};
}

std::pair<double, double> alpha_beta(int q)
{
    if (q < 1)
        throw ParameterError("alpha_beta: prefix must be positive");
    if (q == 1)
        return {M_PI / (2.0 * std::sqrt(2.0)), M_PI / 4.0};
    double Q = std::pow(2.0, q);
    double alpha = (std::sqrt(Q) / 2.0) * std::atan(std::sqrt(3.0 * Q - 4.0) / (Q - 2.0));
    double beta = std::asin(std::sqrt(Q / (4.0 * (Q - 1.0))));
    return {alpha, beta};
}

GrkParams grk_params(int n, int q)
{
    if (n < 2 || q < 1 || q >= n)
        throw ParameterError("grk_params: need 1 <= q < n");
    auto [alpha, beta] = alpha_beta(q);
    long long j1 = round_half_away(M_PI / 4.0 * std::pow(2.0, n / 2.0)
                                   - alpha * std::pow(2.0, (n - q) / 2.0));
    long long j2 = round_half_away(beta * std::pow(2.0, (n - q) / 2.0));
    if (j1 < 0)
        throw ParameterError("grk_params: register too small for this prefix (j1 < 0)");
    return GrkParams{n, q, alpha, beta, j1, j2};
}

PartialParams partial_params(int width, int prefix)
{
    if (width < 2 || prefix < 1 || prefix >= width)
        throw ParameterError("partial_params: need 1 <= prefix < width");
    auto [gamma, eta] = alpha_beta(prefix);
    double theta1 = std::asin(std::pow(2.0, -width / 2.0));
    double theta_prime = std::asin(std::pow(2.0, -(width - prefix) / 2.0));
    long long p1 = round_half_away(M_PI / 4.0 * std::pow(2.0, width / 2.0)
                                   - gamma * std::pow(2.0, (width - prefix) / 2.0));
    long long p2 = round_half_away(eta * std::pow(2.0, (width - prefix) / 2.0));
    if (p1 < 0)
        throw ParameterError("partial_params: register too small for this prefix (p1 < 0)");
    double s1 = std::sin(double(2 * p1 + 1) * theta1);
    double c1 = std::cos(double(2 * p1 + 1) * theta1);
    double rot = 2.0 * double(p2) * theta_prime;
    double block = std::pow(2.0, width - prefix);
    double rest = std::sqrt(block - 1.0);       // items beside the target in its block
    double denom = std::sqrt(std::pow(2.0, width) - 1.0); // all non-target items
    double a_t = s1 * std::cos(rot) + rest * c1 * std::sin(rot) / denom;
    double a_nt = -s1 * std::sin(rot) + rest * c1 * std::cos(rot) / denom;
    double E = rest * a_nt + (std::pow(2.0, width) - block) * c1 / denom;
    double F = c1 / denom;
    return PartialParams{width, prefix, p1, p2, theta1, theta_prime, gamma, eta, a_t, a_nt, E, F};
}

bool phase_feasible(double E, double F, double a_t, int width)
{
    double lhs = E - std::pow(2.0, width - 1) * F;
    // Tiny absolute slack: the worked boundary case sits exactly on equality
    // and must not flip on rounding dust.
    return lhs * lhs <= a_t * a_t + 1e-15;
}

std::pair<double, double> solve_phases(double E, double F, double a_t, int width, bool mirrored)
{
    if (a_t == 0.0)
        throw NumericDomainError("solve_phases: a_t = 0 leaves phi unconstrained");
    if (!phase_feasible(E, F, a_t, width))
        throw InfeasiblePlanError("solve_phases: (E - 2^{w-1}F)^2 > a_t^2, no phase pair exists",
                                  E, F, a_t);
    double N = std::pow(2.0, width);
    double num = N * N / 2.0 * F * F - N * E * F + E * E - a_t * a_t;
    double den = E * E - N * E * F - a_t * a_t;
    if (den == 0.0)
        throw NumericDomainError("solve_phases: degenerate denominator");
    double theta = std::acos(clamp_unit(num / den, "solve_phases theta"));
    double cphi = clamp_unit((N / 2.0 * F - E) / a_t, "solve_phases phi");
    // Pick sin(phi)'s sign so a_t * sin(phi) * sin(theta) > 0 (theta in
    // [0, pi] keeps sin(theta) >= 0). Vacuous when sin(theta) = 0.
    double phi = a_t > 0.0 ? std::acos(cphi) : -std::acos(cphi);
    if (mirrored)
        return {-theta, -phi};
    return {theta, phi};
}

IdgsPlan idgs_plan(int n, int k, int p, bool mirrored)
{
    if (k < 1)
        throw ParameterError("idgs_plan: need k >= 1 (one pinned bit per split)");
    if (p < 1)
        throw ParameterError("idgs_plan: need p >= 1");
    if (p + k >= n)
        throw ParameterError("idgs_plan: need p + k < n");
    PartialParams pp = partial_params(n - k, p);
    auto [theta, phi] = solve_phases(pp.E, pp.F, pp.a_t, n - k, mirrored);
    LongParams stage2 = long_params(n - p - k);
    return IdgsPlan{n,    k,     p,      pp.p1,  pp.p2, pp.theta1, pp.theta_prime, pp.gamma,
                    pp.eta, pp.a_t, pp.a_nt, pp.E,  pp.F,  theta,     phi,            stage2};
}

double query_coefficient(double x)
{
    if (x <= 4.0)
        throw ParameterError("query_coefficient: needs block size > 4");
    return M_PI / 4.0 + std::asin(std::sqrt(x / (4.0 * (x - 1.0)))) / std::sqrt(x)
           - 0.5 * std::atan(std::sqrt(3.0 * x - 4.0) / (x - 2.0));
}

} // namespace idgs
