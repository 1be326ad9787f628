#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "qgsw/config.hpp"
#include "qgsw/diagnostics.hpp"
#include "qgsw/error.hpp"
#include "qgsw/io.hpp"

using namespace qgsw;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("qgsw_cfg_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string config_error_field(const std::function<void()>& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<none>";
}

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("defaults load and validate") {
        const auto cfg = config::load("", {});
        CHECK(cfg.run.grid.n == 256);
        CHECK(cfg.seed == 1);
        CHECK(config::config_hash(cfg).size() == 16);
    }

    TEST_CASE("unknown keys name the dotted field") {
        const auto doc = json::parse(R"({"schema_version": 1, "solver": {"T": 5, "dtt": 0.1}})");
        CHECK(config_error_field([&] { config::from_json(doc); }) == "solver.dtt");
        const auto top = json::parse(R"({"schema_version": 1, "extra": 1})");
        CHECK(config_error_field([&] { config::from_json(top); }) == "extra");
    }

    TEST_CASE("type and value errors") {
        CHECK(config_error_field([] { config::from_json(json::parse(R"({"schema_version": 1, "grid": {"N": 2.5}})")); }) ==
              "grid.N");
        CHECK(config_error_field([] { config::from_json(json::parse(R"({"schema_version": 2})")); }) == "schema_version");
        CHECK(config_error_field([] {
                  config::from_json(json::parse(R"({"schema_version": 1, "solver": {"frame": "sideways"}})"));
              }) == "solver.frame");
        CHECK(config_error_field([] {
                  config::from_json(json::parse(R"({"schema_version": 1, "solver": {"T": -3}})"));
              }) == "solver.T");
    }

    TEST_CASE("syntax errors report line and column") {
        try {
            config::parse_document("{\n  \"grid\": {\n    \"N\": 64,,\n  }\n}", "bad.json");
            FAIL("expected a syntax error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("bad.json:3:") != std::string::npos);
        }
    }

    TEST_CASE("overrides") {
        auto doc = config::parse_document(R"({"schema_version": 1})", "<test>");
        config::apply_override(doc, "solver.T=12.5");
        config::apply_override(doc, "initial.family=band");
        config::apply_override(doc, "diagnostics.tracked_xi=[1.0, 0.5]");
        const auto cfg = config::from_json(doc);
        CHECK(cfg.run.t_final == 12.5);
        CHECK(cfg.run.initial.family == "band");
        CHECK(cfg.diagnostics.tracked_xi.size() == 2);
        CHECK_THROWS_AS(config::apply_override(doc, "no_equals_sign"), ConfigError);
        CHECK_THROWS_AS(config::apply_override(doc, "solver.T.x=1"), ConfigError);
    }

    TEST_CASE("hash depends on content only") {
        const auto a = config::load("", {});
        const auto b = config::load("", {"solver.dt=0.1"});
        const auto c = config::load("", {"solver.dt=0.05"});
        CHECK(config::config_hash(a) == config::config_hash(b));
        CHECK(config::config_hash(a) != config::config_hash(c));
    }

    TEST_CASE("json round trip") {
        const auto cfg = config::load("", {"initial.family=modes", R"(initial.modes=[{"k": 1, "amplitude": 0.1, "phase": 0.2}])",
                                           "diagnostics.tracked_xi=[1]", "solver.nonlinearity=series", "solver.mu_max=2"});
        const auto doc = config::to_json(cfg);
        const auto again = config::from_json(doc);
        CHECK(config::to_json(again) == doc);
        CHECK(config::config_hash(again) == config::config_hash(cfg));
        CHECK(again.run.initial.modes.size() == 1);
        CHECK(again.run.mu_max == 2);
    }

    TEST_CASE("file loading") {
        const auto dir = scratch_dir("load");
        std::ofstream(dir / "c.json") << R"({"schema_version": 1, "grid": {"N": 128}})";
        const auto cfg = config::load((dir / "c.json").string(), {"grid.N=64"});
        CHECK(cfg.run.grid.n == 64);
        CHECK_THROWS_AS(config::load((dir / "missing.json").string(), {}), ConfigError);
        fs::remove_all(dir);
    }
}

TEST_SUITE("io") {
    TEST_CASE("checkpoint round trip is bit exact") {
        const auto dir = scratch_dir("ckpt");
        FrontState s;
        s.grid = Grid{64, 7.25};
        s.time = 3.125;
        s.frame = Frame::lab;
        s.jump = 0.3;
        for (int j = 0; j < s.grid.n; ++j) s.values.push_back(std::sin(0.37 * j) / 3.0);
        const auto path = (dir / "c.txt").string();
        io::write_checkpoint(path, s, "abcdef0123456789");
        std::string hash;
        const auto r = io::read_checkpoint(path, &hash);
        CHECK(hash == "abcdef0123456789");
        CHECK(r.grid == s.grid);
        CHECK(r.time == s.time);
        CHECK(r.frame == s.frame);
        CHECK(r.jump == s.jump);
        CHECK(r.values == s.values);
        // Diagnostics recomputed from the checkpoint match the in-memory state.
        const auto a = diagnostics::make_record(s), b = diagnostics::make_record(r);
        CHECK(a.hs == b.hs);
        CHECK(a.sup == b.sup);
        CHECK_THROWS(io::read_checkpoint((dir / "none.txt").string()));
        fs::remove_all(dir);
    }

    TEST_CASE("run directories are never reused") {
        const auto dir = scratch_dir("runs");
        std::set<std::string> seen;
        for (int i = 0; i < 5; ++i) {
            const auto p = io::make_run_dir(dir.string(), "simulate");
            CHECK(fs::is_directory(p));
            CHECK(seen.insert(p).second);
        }
        fs::remove_all(dir);
    }

    TEST_CASE("output root from the environment") {
        const char* old = std::getenv("QGSW_OUTPUT_ROOT");
        const std::string saved = old ? old : "";
        unsetenv("QGSW_OUTPUT_ROOT");
        CHECK(io::default_output_root() == "runs");
        setenv("QGSW_OUTPUT_ROOT", "/tmp/elsewhere", 1);
        CHECK(io::default_output_root() == "/tmp/elsewhere");
        if (old) setenv("QGSW_OUTPUT_ROOT", saved.c_str(), 1);
        else unsetenv("QGSW_OUTPUT_ROOT");
    }

    TEST_CASE("series and gnuplot files") {
        const auto dir = scratch_dir("series");
        io::write_series((dir / "a.dat").string(), "t", "sup", {1.0, 2.0}, {0.5, 0.25});
        io::write_gnuplot_script((dir / "a.gp").string(), "decay", {"a.dat"}, true);
        std::ifstream in(dir / "a.dat");
        std::string line;
        int data = 0;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#') ++data;
        CHECK(data == 2);
        std::ifstream gp(dir / "a.gp");
        const std::string script((std::istreambuf_iterator<char>(gp)), {});
        CHECK(script.find("a.dat") != std::string::npos);
        CHECK(script.find("logscale") != std::string::npos);
        fs::remove_all(dir);
    }
}
