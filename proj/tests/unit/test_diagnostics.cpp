#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "qgsw/diagnostics.hpp"
#include "qgsw/error.hpp"

using namespace qgsw;
using namespace qgsw::diagnostics;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

FrontState gaussian_state(const Grid& g, double amp = 0.1, double t = 0.0) {
    FrontState s;
    s.grid = g;
    s.time = t;
    s.values.resize(g.n);
    for (int j = 0; j < g.n; ++j) s.values[j] = amp * std::exp(-g.x(j) * g.x(j) / 2.0);
    return s;
}

std::vector<FrontState> short_run(double cadence) {
    RunConfig c;
    c.grid = Grid{256, 16.0 * pi};
    c.initial.amplitude = 0.05;
    c.initial.width = 2.0;
    c.t_final = 4.0;
    c.step.dt = 0.1;
    c.cadence = cadence;
    return run(c).states;
}

fs::path scratch_dir(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("qgsw_diag_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_SUITE("diagnostics") {
    TEST_CASE("decay fit recovers an exact power law") {
        std::vector<double> t, v;
        for (int k = 1; k <= 200; ++k) {
            t.push_back(5.0 * k);
            v.push_back(5.0 * std::pow(5.0 * k, -0.5));
        }
        const auto f = decay_fit(t, v, 20.0, 1000.0);
        CHECK(std::abs(f.exponent + 0.5) < 1e-12);
        CHECK(std::abs(f.intercept - std::log(5.0)) < 1e-10);
        CHECK(f.half_width < 1e-10);
        CHECK(f.samples == 197);
        for (auto& x : v) x *= 1e-3;
        CHECK(std::abs(decay_fit(t, v, 20.0, 1000.0).exponent + 0.5) < 1e-12);
        CHECK_THROWS_AS(decay_fit(t, v, 20.0, 40.0), DomainError);
        v[10] = -1.0;
        CHECK_THROWS_AS(decay_fit(t, v, 20.0, 1000.0), DomainError);
        CHECK_THROWS_AS(decay_fit(t, std::vector<double>(3), 0.0, 1.0), ShapeError);
    }

    TEST_CASE("decay fit half-width reflects scatter") {
        std::vector<double> t, v;
        for (int k = 1; k <= 100; ++k) {
            t.push_back(k);
            v.push_back(std::pow(k, -0.5) * (1.0 + 0.05 * std::sin(7.0 * k)));
        }
        const auto f = decay_fit(t, v, 10.0, 100.0);
        CHECK(std::abs(f.exponent + 0.5) < 0.05);
        CHECK(f.half_width > 1e-4);
        CHECK(f.half_width < 0.05);
    }

    TEST_CASE("weighted profile norm at t = 0 is |x phi| / sqrt(2 pi)") {
        const Grid g{512, 16.0 * pi};
        const auto s = gaussian_state(g);
        double xs = 0.0;
        for (int j = 0; j < g.n; ++j) xs += std::pow(g.x(j) * s.values[j], 2) * g.dx();
        CHECK(std::abs(weighted_profile_norm(s) - std::sqrt(xs / (2.0 * pi))) < 1e-12);
        // Analytic value for a gaussian: |x e^{-x^2/2}|^2 = sqrt(pi)/2
        CHECK(std::abs(weighted_profile_norm(s) - 0.1 * std::sqrt(std::sqrt(pi) / 2.0 / (2.0 * pi))) < 1e-10);
    }

    TEST_CASE("record contents") {
        const Grid g{1024, 16.0 * pi};
        const auto s = gaussian_state(g, 0.3);
        const auto r = make_record(s);
        CHECK(std::abs(r.l2 - l2_norm(g, s.values)) < 1e-15);
        CHECK(std::abs(r.sup - 0.3) < 1e-10);
        CHECK(std::abs(r.zero_mode - 0.3 * std::sqrt(2.0 * pi) / (2.0 * pi)) < 1e-12);
        CHECK(r.tail < 1e-10);
        CHECK(r.hs > r.l2 / std::sqrt(2.0 * pi));
        // Lab and moving frames give the same record at the same time.
        auto lab = gaussian_state(g, 0.3, 2.0);
        auto mov = lab;
        mov.frame = Frame::moving;
        lab.frame = Frame::lab;
        const double shift = 2.0 * pi * 2.0;
        for (int j = 0; j < g.n; ++j) {
            const double x = g.x(j) + shift;
            lab.values[j] = 0.3 * std::exp(-std::pow(std::remainder(x, 2.0 * g.half_length), 2) / 2.0);
        }
        const auto rl = make_record(lab), rm = make_record(mov);
        CHECK(std::abs(rl.hs - rm.hs) < 1e-10);
        CHECK(std::abs(rl.dxi_h - rm.dxi_h) < 1e-8);
    }

    TEST_CASE("scattering extraction") {
        const auto states = short_run(0.25);
        const double xi = 1.0;
        const auto s = scattering_extract(states, xi);
        CHECK(s.warning.empty());
        REQUIRE(s.times.size() == states.size());
        const auto f0 = transform(states.front());
        CHECK(std::abs(s.v[0] - f0.coeffs[grid_index(f0.grid, xi)]) < 1e-15);
        CHECK(s.theta[0] == 0.0);
        for (size_t k = 0; k < s.times.size(); ++k) {
            CHECK(std::abs(s.v[k] - std::polar(1.0, s.theta[k]) * s.h[k]) < 1e-12 * std::abs(s.h[k]));
            CHECK(std::abs(std::abs(s.v[k]) - std::abs(s.h[k])) < 1e-14);
        }
        CHECK(!scattering_extract(short_run(1.0), xi).warning.empty());
        CHECK_THROWS_AS(scattering_extract(states, 1.01), DomainError);
    }

    TEST_CASE("record stream matches batch extraction") {
        const auto states = short_run(0.5);
        RecordStream rs({}, {1.0, -0.5});
        for (const auto& st : states) rs.add(st);
        const auto batch = scattering_extract(states, -0.5);
        for (size_t k = 0; k < states.size(); ++k) {
            CHECK(rs.records()[k].tracked[1].theta == doctest::Approx(batch.theta[k]).epsilon(1e-14));
            CHECK(std::abs(rs.records()[k].tracked[1].v - batch.v[k]) < 1e-15);
        }
        CHECK_THROWS_AS(rs.add(states.front()), DomainError);
    }

    TEST_CASE("phase total variation") {
        std::vector<double> t;
        std::vector<cplx> z;
        for (int k = 0; k <= 400; ++k) {
            t.push_back(0.1 * k);
            z.push_back(std::polar(2.0, 0.9 * t.back() - 0.3 * std::sin(t.back())));
        }
        // Unwrapping across several turns; the argument is monotone on [0, 40].
        const double tv = phase_total_variation(t, z, 0.0, 40.0);
        CHECK(std::abs(tv - (0.9 * 40.0 - 0.3 * std::sin(40.0))) < 1e-9);
    }

    TEST_CASE("resonance integral against its closed form") {
        // int int e^{-i x1 x2} e^{-(x1^2 + x2^2)/B^2} = 2 pi / sqrt(1 + 4/B^4)
        for (double b : {1.0, 2.0, 4.0, 8.0}) {
            const double exact = 2.0 * pi / std::sqrt(1.0 + 4.0 / std::pow(b, 4));
            CHECK(std::abs(resonance_integral(b) - exact) < 1e-9);
        }
        CHECK(resonance_integral_check(1.0, 200.0, 1.0) < 1e-2);
        CHECK_THROWS_AS(resonance_integral_check(1.0, 1.0, 1.0), RegimeError);
        CHECK_THROWS_AS(resonance_integral(0.0), DomainError);
    }

    TEST_CASE("energy monitor") {
        const auto states = short_run(0.5);
        EnergyMonitor m;
        for (const auto& s : states) m.add(s);
        CHECK(m.ratios.size() == states.size() - 1);
        for (double r : m.ratios) CHECK(std::isfinite(r));
        CHECK(m.max_ratio() >= m.median_ratio());
    }

    TEST_CASE("csv and json-lines output") {
        const auto dir = scratch_dir("writer");
        const auto states = short_run(1.0);
        RecordStream rs({}, {1.0});
        {
            RecordWriter w((dir / "d.csv").string(), (dir / "d.jsonl").string(), {1.0});
            for (const auto& s : states) w.write(rs.add(s));
            DiagnosticsRecord bad;
            CHECK_THROWS_AS(w.write(bad), ShapeError);
        }
        std::ifstream csv(dir / "d.csv");
        std::string line;
        std::getline(csv, line);
        CHECK(line == "# tracked_xi 1");
        std::getline(csv, line);
        CHECK(line == RecordWriter::csv_header(1));
        CHECK(line.rfind("time,l2,hs,z,b16,sup,dxi_h,zero_mode,tail,theta_0,", 0) == 0);
        int rows = 0;
        while (std::getline(csv, line)) ++rows;
        CHECK(rows == int(states.size()));

        std::ifstream jl(dir / "d.jsonl");
        int k = 0;
        while (std::getline(jl, line)) {
            const auto j = nlohmann::json::parse(line);
            CHECK(j["schema_version"] == RecordWriter::schema_version);
            CHECK(j["time"].get<double>() == states[k].time);
            CHECK(j["tracked"].size() == 1);
            CHECK(j["tracked"][0]["h"].size() == 2);
            ++k;
        }
        CHECK(k == int(states.size()));
        fs::remove_all(dir);
    }
}
