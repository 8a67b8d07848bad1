// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "idgs/state.hpp"

using namespace idgs;

namespace {

bool close(const cplx& a, const cplx& b, double tol = 1e-12)
{
    return std::abs(a - b) <= tol;
}

} // namespace

TEST_CASE("uniform_state is normalized with equal real amplitudes")
{
    for (int m : {1, 3, 8}) {
        PureState s = uniform_state(m);
        CHECK(s.m == m);
        CHECK(s.size() == (std::size_t(1) << m));
        CHECK(std::fabs(norm_sq(s) - 1.0) < 1e-12);
        for (const cplx& a : s.amp)
            CHECK(close(a, cplx(1.0 / std::sqrt(double(s.size())), 0.0)));
    }
}

TEST_CASE("register bounds raise the documented errors")
{
    CHECK_THROWS_AS(uniform_state(0), ParameterError);
    CHECK_THROWS_AS(uniform_state(kMaxPureQubits + 1), CapacityError);
    CHECK_THROWS_AS(density_from(uniform_state(kMaxMixedQubits + 1)), CapacityError);
}

TEST_CASE("apply_diagonal_phase multiplies only marked entries")
{
    PureState s = uniform_state(3);
    double ph = 0.7;
    PureState t = apply_diagonal_phase(s, [](std::uint64_t x) { return x == 5; }, ph);
    for (std::uint64_t x = 0; x < 8; ++x) {
        cplx want = s.amp[x] * (x == 5 ? std::polar(1.0, ph) : cplx(1.0, 0.0));
        CHECK(close(t.amp[x], want));
    }
    CHECK(std::fabs(norm_sq(t) - 1.0) < 1e-12);
}

TEST_CASE("suffix diffusion at theta = pi inverts about each block mean")
{
    // Hand-computed 2-qubit example on the full register: a -> 2*mean - a.
    PureState s = uniform_state(2);
    s.amp = {cplx(0.5, 0.0), cplx(0.5, 0.0), cplx(0.5, 0.0), cplx(-0.5, 0.0)};
    PureState t = apply_suffix_diffusion(s, 2, std::numbers::pi);
    cplx mean(0.25, 0.0);
    for (int x = 0; x < 4; ++x)
        CHECK(close(t.amp[std::size_t(x)], 2.0 * mean - s.amp[std::size_t(x)]));
}

TEST_CASE("suffix diffusion acts independently within each trailing block")
{
    PureState s = uniform_state(4);
    for (std::size_t x = 0; x < 16; ++x)
        s.amp[x] = cplx(double(x) / 40.0, double(x % 3) / 9.0);
    double nrm = std::sqrt(norm_sq(s));
    for (auto& a : s.amp)
        a /= nrm;
    double theta = 1.234;
    PureState t = apply_suffix_diffusion(s, 2, theta);
    cplx f = 1.0 - std::polar(1.0, theta);
    for (std::size_t base = 0; base < 16; base += 4) {
        cplx mean(0.0, 0.0);
        for (std::size_t y = 0; y < 4; ++y)
            mean += s.amp[base + y] / 4.0;
        for (std::size_t y = 0; y < 4; ++y)
            CHECK(close(t.amp[base + y], f * mean - s.amp[base + y]));
    }
    // Unitary for any theta: the norm survives.
    CHECK(std::fabs(norm_sq(t) - 1.0) < 1e-12);
}

TEST_CASE("uniform state is a fixed point of suffix diffusion up to phase")
{
    // (1 - e^{i theta})|u><u| - I maps |u> to -e^{i theta}|u>.
    double theta = 2.1;
    PureState u = uniform_state(5);
    PureState t = apply_suffix_diffusion(u, 5, theta);
    cplx scale = -std::polar(1.0, theta);
    for (std::size_t x = 0; x < t.size(); ++x)
        CHECK(close(t.amp[x], scale * u.amp[x]));
    CHECK(std::fabs(fidelity(u, t) - 1.0) < 1e-12);
}

TEST_CASE("prefix_distribution sums block probabilities")
{
    PureState s = uniform_state(3);
    s.amp = {cplx(0.5, 0.0), cplx(0.5, 0.0), cplx(0.0, 0.5), cplx(0.0, 0.5),
             cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(0.5, 0.0), cplx(0.0, -0.5)};
    PrefixDistribution d = prefix_distribution(s, 2);
    REQUIRE(d.probs.size() == 4);
    CHECK(std::fabs(d.probs[0] - 0.5) < 1e-12);
    CHECK(std::fabs(d.probs[1] - 0.5) < 1e-12);
    CHECK(std::fabs(d.probs[2] - 0.0) < 1e-12);
    CHECK(std::fabs(d.probs[3] - 0.5) < 1e-12);
    CHECK_THROWS_AS(prefix_distribution(s, 0), ParameterError);
    CHECK_THROWS_AS(prefix_distribution(s, 4), ParameterError);
}

TEST_CASE("sample_prefix is deterministic in the seed and matches the marginal")
{
    PureState s = uniform_state(4);
    s = apply_suffix_diffusion(s, 4, std::numbers::pi / 3);
    auto h1 = sample_prefix(s, 2, 4096, 42);
    auto h2 = sample_prefix(s, 2, 4096, 42);
    CHECK(h1 == h2);
    auto h3 = sample_prefix(s, 2, 4096, 43);
    CHECK(h1 != h3); // overwhelmingly likely for 4096 draws
    std::uint64_t total = 0;
    for (auto c : h1)
        total += c;
    CHECK(total == 4096);
    PrefixDistribution d = prefix_distribution(s, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        double freq = double(h1[i]) / 4096.0;
        CHECK(std::fabs(freq - d.probs[i]) < 0.05); // ~6 sigma for 4096 draws
    }
}

TEST_CASE("sample_index walks the CDF and lands in range")
{
    std::vector<double> probs = {0.0, 0.25, 0.5, 0.25};
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t x = sample_index(probs, rng);
        CHECK(x >= 1);
        CHECK(x <= 3);
    }
    // Degenerate distribution always lands on its atom.
    std::vector<double> atom = {0.0, 0.0, 1.0};
    Rng rng2(9);
    for (int i = 0; i < 100; ++i)
        CHECK(sample_index(atom, rng2) == 2);
}

TEST_CASE("fidelity is 1 exactly on phase-shifted copies and 0 on orthogonal states")
{
    PureState a = uniform_state(3);
    PureState b = apply_diagonal_phase(a, [](std::uint64_t) { return true; }, 1.0);
    CHECK(std::fabs(fidelity(a, b) - 1.0) < 1e-12);
    PureState c = uniform_state(3);
    for (std::size_t x = 0; x < 8; ++x)
        c.amp[x] = (x == 0) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    PureState d = c;
    d.amp[0] = cplx(0.0, 0.0);
    d.amp[1] = cplx(1.0, 0.0);
    CHECK(fidelity(c, d) < 1e-15);
    CHECK_THROWS_AS(fidelity(uniform_state(2), uniform_state(3)), ParameterError);
}

TEST_CASE("density_from produces the projector of the state")
{
    PureState s = uniform_state(2);
    s.amp = {cplx(0.5, 0.5), cplx(0.5, 0.0), cplx(0.0, 0.5), cplx(0.0, 0.0)};
    MixedState r = density_from(s);
    REQUIRE(r.dim() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(close(r.rho[i * 4 + j], s.amp[i] * std::conj(s.amp[j])));
    // Trace equals the squared norm.
    cplx tr(0.0, 0.0);
    for (std::size_t i = 0; i < 4; ++i)
        tr += r.rho[i * 4 + i];
    CHECK(close(tr, cplx(norm_sq(s), 0.0)));
}
