#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgsw/error.hpp"
#include "qgsw/solver.hpp"
#include "qgsw/spectral.hpp"

using namespace qgsw;

namespace {

constexpr double pi = std::numbers::pi;

RunConfig small(double amplitude = 0.05) {
    RunConfig c;
    c.grid = Grid{256, 16.0 * pi};
    c.initial.amplitude = amplitude;
    c.initial.width = 2.0;
    c.t_final = 2.0;
    c.step.dt = 0.1;
    c.cadence = 1.0;
    return c;
}

double l2_diff(const FrontState& a, const FrontState& b) {
    std::vector<double> d(a.values.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = a.values[i] - b.values[i];
    return l2_norm(a.grid, d);
}

FrontState advance(FrontState s, double dt, int steps, const RunConfig& c) {
    for (int i = 0; i < steps; ++i) s = step(s, dt, c);
    return s;
}

}  // namespace

TEST_SUITE("solver") {
    TEST_CASE("linear mode rotates by t p(k)") {
        auto c = small();
        c.nonlinearity = Nonlinearity::none;
        c.initial.family = "modes";
        c.initial.modes = {ModeSpec{1.0, 0.2, 0.3}};
        c.t_final = 7.3;
        c.step.dt = 0.7;  // does not divide T; the last step is shortened
        const auto tr = run(c);
        const auto f0 = transform(tr.states.front()), f1 = transform(tr.states.back());
        CHECK(tr.states.back().time == doctest::Approx(7.3).epsilon(1e-14));
        const int m = 16;
        const cplx expect = f0.coeffs[m] * std::polar(1.0, 7.3 * dispersion(1.0));
        CHECK(std::abs(f1.coeffs[m] - expect) < 1e-12 * std::abs(expect));
        CHECK(linear_frequency(1.0, Frame::moving) == dispersion(1.0));
        CHECK(linear_frequency(1.0, Frame::lab) == doctest::Approx(2.0 * pi + dispersion(1.0)));
    }

    TEST_CASE("steps are reversible") {
        const auto c = small(0.1);
        const auto s0 = initial_state(c);
        const auto s1 = step(step(s0, 0.05, c), -0.05, c);
        CHECK(l2_diff(s0, s1) < 1e-9);
        CHECK(std::abs(s1.time) < 1e-15);
    }

    TEST_CASE("fourth-order convergence") {
        auto c = small(0.3);
        c.initial.width = 1.5;
        const auto s0 = initial_state(c);
        const double T = 1.0;
        const auto ref = advance(s0, T / 64, 64, c);
        const double e1 = l2_diff(advance(s0, T / 4, 4, c), ref);
        const double e2 = l2_diff(advance(s0, T / 8, 8, c), ref);
        const double ratio = e1 / e2;
        CHECK(ratio > 12.0);
        CHECK(ratio < 20.0);
    }

    TEST_CASE("zero data stays zero") {
        auto c = small(0.0);
        c.initial.family = "zero";
        const auto tr = run(c);
        for (const auto& s : tr.states)
            for (double v : s.values) CHECK(v == 0.0);
    }

    TEST_CASE("L2 norm and mean are conserved") {
        auto c = small(0.05);
        c.t_final = 10.0;
        const auto tr = run(c);
        const auto& a = tr.states.front();
        const double l0 = l2_norm(a.grid, a.values);
        const double m0 = transform(a).coeffs[0].real();
        CHECK(tr.states.size() == 11);
        for (const auto& s : tr.states) {
            CHECK(std::abs(l2_norm(s.grid, s.values) / l0 - 1.0) < 1e-6);
            CHECK(std::abs(transform(s).coeffs[0].real() - m0) < 1e-12);
        }
    }

    TEST_CASE("series nonlinearity tracks the direct one at small amplitude") {
        auto c = small(0.02);
        const auto direct = run(c).states.back();
        c.nonlinearity = Nonlinearity::series;
        const auto series = run(c).states.back();
        c.nonlinearity = Nonlinearity::none;
        const auto linear = run(c).states.back();
        const double d_series = l2_diff(direct, series), d_linear = l2_diff(direct, linear);
        CHECK(d_linear > 0.0);
        CHECK(d_series < 1e-3 * d_linear);
    }

    TEST_CASE("adaptive stepping agrees with fixed steps") {
        auto c = small(0.1);
        const auto fixed = run(c).states.back();
        c.step.adaptive = true;
        c.step.tolerance = 1e-10;
        const auto tr = run(c);
        CHECK(l2_diff(fixed, tr.states.back()) < 1e-7);
        CHECK(!tr.steps.empty());
    }

    TEST_CASE("stationary phase points") {
        const auto p1 = stationary_phase_points(1.0);
        REQUIRE(!p1.empty());
        for (double x : p1) CHECK(std::abs(x) < 1e-15);
        const auto p8 = stationary_phase_points(0.125);
        REQUIRE(p8.size() == 2);
        for (double x : p8) {
            CHECK(std::abs(std::abs(x) - std::sqrt(3.0)) < 1e-14);
            CHECK(std::abs(dispersion(x, 1) + 0.125) < 1e-14);
        }
        CHECK(stationary_phase_points(2.0).empty());
    }

    TEST_CASE("blow-up keeps the last trusted state") {
        auto c = small(20.0);
        c.initial.width = 1.0;
        c.t_final = 5.0;
        try {
            run(c);
            FAIL("expected blow-up");
        } catch (const BlowUpError& e) {
            CHECK(e.last_state.values.size() == size_t(c.grid.n));
            for (double v : e.last_state.values) CHECK(std::isfinite(v));
        }
    }

    TEST_CASE("configuration validation") {
        auto bad = [](auto mutate) {
            auto c = small();
            mutate(c);
            CHECK_THROWS_AS(c.validate(), ConfigError);
        };
        bad([](RunConfig& c) { c.t_final = -1.0; });
        bad([](RunConfig& c) { c.step.dt = 0.0; });
        bad([](RunConfig& c) { c.dealias = 0.3; });
        bad([](RunConfig& c) {
            c.nonlinearity = Nonlinearity::series;
            c.mu_max = 4;
        });
        bad([](RunConfig& c) { c.cadence = 0.0; });
        bad([](RunConfig& c) { c.grid.n = 100; });
        CHECK_THROWS_AS(nonlinearity_from_string("cubic"), ConfigError);
        CHECK(nonlinearity_from_string(to_string(Nonlinearity::series)) == Nonlinearity::series);
    }

    TEST_CASE("state must match the configuration") {
        const auto c = small();
        auto s = initial_state(c);
        s.frame = Frame::lab;
        CHECK_THROWS_AS(step(s, 0.1, c), DomainError);
        s = initial_state(c);
        s.grid.n = 128;
        s.values.resize(128);
        CHECK_THROWS_AS(step(s, 0.1, c), ShapeError);
    }
}
