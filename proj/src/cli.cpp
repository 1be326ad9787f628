#include "qgsw/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fftw3.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qgsw/config.hpp"
#include "qgsw/diagnostics.hpp"
#include "qgsw/error.hpp"
#include "qgsw/io.hpp"
#include "qgsw/parallel.hpp"
#include "qgsw/solver.hpp"
#include "qgsw/specfun.hpp"
#include "qgsw/spectral.hpp"
#include "qgsw/symbols.hpp"
#include "qgsw/verify.hpp"

namespace qgsw::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string path_in(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

// JSON has no NaN/inf; store them as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_json(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(2) << '\n';
}

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json versions() {
    json v;
    v["qgsw"] = QGSW_VERSION;
    v["compiler"] = __VERSION__;
    v["cxx_standard"] = long(__cplusplus);
    v["fftw"] = std::string(fftw_version);
    v["nlohmann_json"] =
        fmt("%d.%d.%d", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR, NLOHMANN_JSON_VERSION_PATCH);
    v["cli11"] = CLI11_VERSION;
    return v;
}

// Run-stamped output directory: --out wins, then the config, then the environment.
std::string output_dir(const std::string& flag, const std::string& from_config, const std::string& command) {
    const std::string root = !flag.empty() ? flag : !from_config.empty() ? from_config : io::default_output_root();
    return io::make_run_dir(root, command);
}

class Manifest {
public:
    Manifest(std::string dir, const std::string& command, const std::vector<std::string>& argv)
        : dir_(std::move(dir)), start_(std::chrono::steady_clock::now()) {
        doc_["command"] = command;
        doc_["argv"] = argv;
        doc_["started_utc"] = utc_now();
        doc_["threads"] = thread_count();
        doc_["versions"] = versions();
    }
    json& operator[](const std::string& key) { return doc_[key]; }
    void finish(const std::string& status) {
        doc_["status"] = status;
        doc_["finished_utc"] = utc_now();
        doc_["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_json(path_in(dir_, "manifest.json"), doc_);
    }

private:
    std::string dir_;
    std::chrono::steady_clock::time_point start_;
    json doc_;
};

struct Common {
    std::string config;
    std::vector<std::string> overrides;
    std::string out;
    std::vector<std::string> argv;
};

// ---- simulate -------------------------------------------------------------

int cmd_simulate(const Common& c, std::ostream& out) {
    const config::ExperimentConfig cfg = config::load(c.config, c.overrides);
    const std::string hash = config::config_hash(cfg);
    const std::string dir = output_dir(c.out, cfg.output_dir, "simulate");
    write_json(path_in(dir, "config.json"), config::to_json(cfg));

    Manifest manifest(dir, "simulate", c.argv);
    manifest["config_hash"] = hash;
    manifest["config"] = config::to_json(cfg);

    RunConfig rc = cfg.run;
    rc.keep_states = false;
    const auto& sel = cfg.diagnostics;
    diagnostics::RecordStream stream({sel.hs_index, rc.dealias, 4}, sel.tracked_xi, sel.theta);
    diagnostics::RecordWriter writer(path_in(dir, "diagnostics.csv"), path_in(dir, "diagnostics.jsonl"),
                                     sel.tracked_xi);
    diagnostics::EnergyMonitor energy;
    energy.hs_index = sel.hs_index;
    energy.mu_max = rc.mu_max;
    const std::string ckpt_dir = path_in(dir, "checkpoints");
    if (sel.write_checkpoints) fs::create_directory(ckpt_dir);

    std::vector<double> t, l2, sup, hs;
    int count = 0;
    auto observer = [&](const FrontState& s) {
        if (sel.write_checkpoints) io::write_checkpoint(path_in(ckpt_dir, fmt("ckpt_%06d.txt", count)), s, hash);
        ++count;
        const auto rec = stream.add(s);
        writer.write(rec);
        if (sel.energy_monitor) energy.add(s);
        t.push_back(rec.time);
        l2.push_back(rec.l2);
        sup.push_back(rec.sup);
        hs.push_back(rec.hs);
    };

    std::string status = "ok";
    int code = exit_ok;
    try {
        run(rc, observer);
    } catch (const BlowUpError& e) {
        status = "blowup";
        code = exit_numerical;
        manifest["error"] = e.what();
        io::write_checkpoint(path_in(dir, "last_trusted_state.txt"), e.last_state, hash);
        out << "blow-up: " << e.what() << '\n';
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        status = "numerical_failure";
        code = exit_numerical;
        manifest["error"] = e.what();
        out << "numerical failure: " << e.what() << '\n';
    }

    const std::vector<std::pair<std::string, const std::vector<double>*>> series{
        {"l2.dat", &l2}, {"sup.dat", &sup}, {"hs.dat", &hs}};
    std::vector<std::string> files;
    for (const auto& [name, y] : series) {
        io::write_series(path_in(dir, name), "t", name.substr(0, name.size() - 4), t, *y);
        files.push_back(name);
    }
    io::write_gnuplot_script(path_in(dir, "norms.gp"), "norms", files, true);

    if (sel.energy_monitor && !energy.ratios.empty()) {
        io::write_series(path_in(dir, "energy_ratio.dat"), "t", "ratio", energy.times, energy.ratios);
        manifest["energy_monitor"] = {{"max_ratio", number(energy.max_ratio())},
                                      {"median_ratio", number(energy.median_ratio())},
                                      {"within_3x_median", energy.within(3.0)}};
    }
    manifest["checkpoints"] = count;
    manifest.finish(status);
    out << "simulate: " << status << ", " << count << " checkpoints, config " << hash << "\n" << dir << '\n';
    return code;
}

// ---- decay ----------------------------------------------------------------

struct DecayOptions {
    std::string family = "gaussian";
    double k = 1.5;
    double horizon = 500.0;
    bool linear_only = true;
    int n = 8192;
    double half_length = 1024.0;
    double amplitude = 1.0;
    double width = 1.0;
    double cadence = 5.0;
    double t_min = 20.0;
    double t_max = 0.0;  // 0: horizon
    std::string replay;
};

// Two whitespace-separated columns (t, value); '#' starts a comment line.
void read_columns(const std::string& path, std::vector<double>& t, std::vector<double>& v) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--replay", "cannot read " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        double a, b;
        if (!(ss >> a >> b)) throw ConfigError("--replay", path + ":" + std::to_string(lineno) + ": expected two numbers");
        t.push_back(a);
        v.push_back(b);
    }
}

int cmd_decay(const Common& c, const DecayOptions& o, std::ostream& out) {
    std::vector<double> t, v;
    double t_max = o.t_max > 0.0 ? o.t_max : o.horizon;
    json setup;
    if (!o.replay.empty()) {
        read_columns(o.replay, t, v);
        if (o.t_max <= 0.0) t_max = std::numeric_limits<double>::infinity();
        setup = {{"replay", o.replay}};
    } else {
        if (!(o.horizon >= 100.0)) throw ConfigError("--horizon", "must be at least 100");
        if (o.family != "gaussian" && o.family != "band")
            throw ConfigError("--family", "expected gaussian or band, got '" + o.family + "'");
        RunConfig rc;
        rc.grid = {o.n, o.half_length};
        rc.initial.family = o.family;
        rc.initial.amplitude = o.amplitude;
        rc.initial.width = o.width;
        // Dyadic band around k: [2k/3, 4k/3], so k = 1.5 gives [1, 2].
        rc.initial.k_low = 2.0 * o.k / 3.0;
        rc.initial.k_high = 4.0 * o.k / 3.0;
        rc.nonlinearity = o.linear_only ? Nonlinearity::none : Nonlinearity::direct;
        rc.t_final = o.horizon;
        rc.cadence = o.cadence;
        rc.keep_states = false;
        rc.validate();
        run(rc, [&](const FrontState& s) {
            t.push_back(s.time);
            v.push_back(sup_norm(transform(s)));
        });
        setup = {{"family", o.family},           {"N", o.n},
                 {"L", o.half_length},           {"amplitude", o.amplitude},
                 {"width", o.width},             {"band", {rc.initial.k_low, rc.initial.k_high}},
                 {"horizon", o.horizon},         {"cadence", o.cadence},
                 {"linear_only", o.linear_only}};
    }

    diagnostics::DecayFit fit;
    try {
        fit = diagnostics::decay_fit(t, v, o.t_min, t_max);
    } catch (const DomainError& e) {
        throw DomainError(std::string("insufficient decay samples: ") + e.what());
    }

    const std::string dir = output_dir(c.out, "", "decay");
    io::write_series(path_in(dir, "sup.dat"), "t", "sup", t, v);
    io::write_gnuplot_script(path_in(dir, "decay.gp"), "sup norm", {"sup.dat"}, true);
    const json report{{"exponent", fit.exponent},
                      {"half_width_95", fit.half_width},
                      {"log_prefactor", fit.intercept},
                      {"samples", fit.samples},
                      {"window", {o.t_min, number(t_max)}},
                      {"setup", setup}};
    write_json(path_in(dir, "report.json"), report);
    Manifest manifest(dir, "decay", c.argv);
    manifest["report"] = report;
    manifest.finish("ok");
    out << fmt("decay exponent %.6f +- %.6f (95%%, %d samples)\n", fit.exponent, fit.half_width, fit.samples) << dir
        << '\n';
    return exit_ok;
}

// ---- symbols --------------------------------------------------------------

struct SymbolOptions {
    std::vector<int> range{-2, 2};
    std::vector<int> block;
    int mu = 1;
    int resolution = 64;
    std::uint64_t seed = 1;
    bool dump = false;
    int dump_stride = 4;
};

struct BlockRow {
    int j[3];
    double estimate = 0.0, bound = 0.0;
};

// 2^{sum j} (1+2^{j1})^{-1} (1+2^{2 j2}) prod_{k>=2} (1+2^{j_k}), with the two
// extra indices of the mu = 2 symbol set to j3.
double block_bound(int mu, const int* j) {
    if (mu == 1) return symbols::t1_block_bound(j[0], j[1], j[2]);
    const double j4 = j[2], j5 = j[2];
    const double sum = j[0] + j[1] + j[2] + j4 + j5;
    return std::exp2(sum) / (1.0 + std::exp2(j[0])) * (1.0 + std::exp2(2.0 * j[1])) * (1.0 + std::exp2(j[1])) *
           (1.0 + std::exp2(j[2])) * (1.0 + std::exp2(j4)) * (1.0 + std::exp2(j5));
}

BlockRow evaluate_block(const SymbolOptions& o, const int* j, const std::string& dump_dir) {
    BlockRow row{{j[0], j[1], j[2]}};
    symbols::SymbolFn fn;
    if (o.mu == 1) {
        fn = [](std::span<const double> e) { return cplx(symbols::t_symbol_closed(1, e)); };
    } else {
        // 3-D slice of the quintic symbol: eta_4, eta_5 fixed at seeded points where
        // the cutoff of annulus j3 equals one.
        std::mt19937_64 rng(o.seed + 1000003ULL * unsigned(j[0] + 64) + 1009ULL * unsigned(j[1] + 64) +
                            unsigned(j[2] + 64));
        std::uniform_real_distribution<double> mag(0.8 * std::exp2(j[2]), 1.25 * std::exp2(j[2]));
        std::bernoulli_distribution sign(0.5);
        double fixed[2];
        for (double& f : fixed) f = (sign(rng) ? -1.0 : 1.0) * mag(rng);
        fn = [fixed](std::span<const double> e) {
            const double eta[5] = {e[0], e[1], e[2], fixed[0], fixed[1]};
            return cplx(symbols::t_symbol_closed(2, eta));
        };
    }
    const auto sample = symbols::sample_block(std::span<const int>(j, 3), o.resolution, fn, o.mu == 1 ? "T1" : "T2");
    row.estimate = symbols::s_infinity_estimate(sample);
    row.bound = block_bound(o.mu, j);
    if (!dump_dir.empty())
        symbols::write_symbol_dump(path_in(dump_dir, fmt("block_%d_%d_%d.txt", j[0], j[1], j[2])), sample,
                                   o.dump_stride);
    return row;
}

int cmd_symbols(const Common& c, const SymbolOptions& o, std::ostream& out) {
    if (o.mu != 1 && o.mu != 2) throw ConfigError("--mu", "must be 1 or 2");
    std::vector<std::array<int, 3>> blocks;
    if (!o.block.empty()) {
        if (o.block.size() != 3) throw ConfigError("--block", "expected three indices j1 j2 j3");
        if (!(o.block[0] >= o.block[1] && o.block[1] >= o.block[2]))
            throw ConfigError("--block", "indices must be ordered j1 >= j2 >= j3");
        blocks.push_back({o.block[0], o.block[1], o.block[2]});
    } else {
        if (o.range.size() != 2 || o.range[0] > o.range[1]) throw ConfigError("--range", "expected LO HI with LO <= HI");
        for (int j1 = o.range[0]; j1 <= o.range[1]; ++j1)
            for (int j2 = o.range[0]; j2 <= j1; ++j2)
                for (int j3 = o.range[0]; j3 <= j2; ++j3) blocks.push_back({j1, j2, j3});
    }

    const std::string dir = output_dir(c.out, "", "symbols");
    const std::string dump_dir = o.dump ? path_in(dir, "dumps") : "";
    if (o.dump) fs::create_directory(dump_dir);

    std::vector<BlockRow> rows(blocks.size());
    parallel_for(blocks.size(), [&](size_t b, size_t e) {
        for (size_t i = b; i < e; ++i) rows[i] = evaluate_block(o, blocks[i].data(), dump_dir);
    });

    std::ostringstream table;
    table << "j1,j2,j3,s_infinity,bound,ratio\n";
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool finite = true;
    for (const auto& r : rows) {
        const double q = r.estimate / r.bound;
        finite = finite && std::isfinite(q);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
        table << r.j[0] << ',' << r.j[1] << ',' << r.j[2] << ',' << fmt("%.17g,%.17g,%.17g", r.estimate, r.bound, q)
              << '\n';
    }
    if (!finite) throw RangeError("non-finite bound ratio");
    {
        std::ofstream f(path_in(dir, "ratios.csv"));
        f << table.str();
    }
    const json summary{{"mu", o.mu},         {"blocks", rows.size()},   {"resolution", o.resolution},
                       {"seed", o.seed},     {"min_ratio", lo},         {"max_ratio", hi},
                       {"max_over_min", hi / lo}};
    Manifest manifest(dir, "symbols", c.argv);
    manifest["summary"] = summary;
    manifest.finish("ok");
    out << table.str() << fmt("max ratio %.6e, min ratio %.6e, max/min %.6e over %zu blocks\n", hi, lo, hi / lo,
                              rows.size())
        << dir << '\n';
    return exit_ok;
}

// ---- scatter --------------------------------------------------------------

int cmd_scatter(const Common& c, double window_start, std::ostream& out) {
    const config::ExperimentConfig cfg = config::load(c.config, c.overrides);
    const auto& sel = cfg.diagnostics;
    if (sel.tracked_xi.empty()) throw ConfigError("diagnostics.tracked_xi", "scatter needs at least one frequency");
    const std::string hash = config::config_hash(cfg);
    const std::string dir = output_dir(c.out, cfg.output_dir, "scatter");
    write_json(path_in(dir, "config.json"), config::to_json(cfg));
    Manifest manifest(dir, "scatter", c.argv);
    manifest["config_hash"] = hash;
    manifest["config"] = config::to_json(cfg);

    Trajectory tr;
    std::string status = "ok";
    int code = exit_ok;
    try {
        tr = run(cfg.run);
    } catch (const BlowUpError& e) {
        // Keep what was trusted; extraction still runs on the partial history.
        status = "blowup";
        code = exit_numerical;
        manifest["error"] = e.what();
        out << "blow-up: " << e.what() << '\n';
        io::write_checkpoint(path_in(dir, "last_trusted_state.txt"), e.last_state, hash);
        manifest.finish(status);
        return code;
    }

    const double t0 = tr.states.front().time, t1 = tr.states.back().time;
    const double from = window_start >= 0.0 ? window_start : t0 + (t1 - t0) / 3.0;
    json rows = json::array();
    std::vector<std::string> files;
    for (double xi : sel.tracked_xi) {
        const auto s = diagnostics::scattering_extract(tr.states, xi, sel.theta);
        const std::string name = fmt("scatter_xi_%g.csv", xi);
        std::ofstream f(path_in(dir, name));
        f << "t,theta,h_re,h_im,v_re,v_im\n";
        std::vector<double> arg_h, arg_v;
        for (size_t i = 0; i < s.times.size(); ++i) {
            f << fmt("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.times[i], s.theta[i], s.h[i].real(), s.h[i].imag(),
                     s.v[i].real(), s.v[i].imag());
            arg_h.push_back(std::arg(s.h[i]));
            arg_v.push_back(std::arg(s.v[i]));
        }
        const std::string fh = fmt("arg_h_xi_%g.dat", xi), fv = fmt("arg_v_xi_%g.dat", xi);
        io::write_series(path_in(dir, fh), "t", "arg h", s.times, arg_h);
        io::write_series(path_in(dir, fv), "t", "arg v", s.times, arg_v);
        files.push_back(fh);
        files.push_back(fv);
        const double tv_h = diagnostics::phase_total_variation(s.times, s.h, from, t1);
        const double tv_v = diagnostics::phase_total_variation(s.times, s.v, from, t1);
        rows.push_back({{"xi", xi}, {"tv_arg_h", tv_h}, {"tv_arg_v", tv_v}, {"warning", s.warning}});
        out << fmt("xi %g: TV arg h %.6e, TV arg v %.6e on [%g, %g]", xi, tv_h, tv_v, from, t1);
        if (!s.warning.empty()) out << " (" << s.warning << ')';
        out << '\n';
    }
    io::write_gnuplot_script(path_in(dir, "phases.gp"), "phases", files, false);
    manifest["tracked"] = rows;
    manifest["window"] = {from, t1};
    manifest.finish(status);
    out << dir << '\n';
    return code;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const std::vector<std::string>& only, double k0_perturbation, std::ostream& out) {
    specfun::testing::set_k0_perturbation(k0_perturbation);
    std::vector<verify::CriterionResult> results;
    try {
        results = verify::run(only, out);
    } catch (const std::invalid_argument& e) {
        specfun::testing::set_k0_perturbation(0.0);
        throw ConfigError("--only", e.what());
    }
    specfun::testing::set_k0_perturbation(0.0);
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
    out << fmt("%zu criteria, %ld failed\n", results.size(), long(failed));
    return failed ? exit_acceptance : exit_ok;
}

int env_threads() {
    const char* env = std::getenv("QGSW_THREADS");
    if (!env || !*env) return 1;
    try {
        return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
        throw ConfigError("QGSW_THREADS", std::string("not an integer: ") + env);
    }
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quasi-geostrophic shear-front simulation and verification tool", "qgsw"};
    app.require_subcommand(1);
    app.set_version_flag("--version", QGSW_VERSION);

    Common common;
    for (int i = 0; i < argc; ++i) common.argv.emplace_back(argv[i]);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default $QGSW_THREADS or 1)")->check(CLI::PositiveNumber);

    auto add_config_flags = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "Experiment config (JSON); defaults when omitted");
        sub->add_option("--override", common.overrides, "KEY=VAL applied on top of the config")->allow_extra_args(false);
    };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", common.out, "Output root (default $QGSW_OUTPUT_ROOT or ./runs)");
    };

    auto* sim = app.add_subcommand("simulate", "Run an evolution and write checkpoints and diagnostics");
    add_config_flags(sim);
    add_out(sim);

    DecayOptions dec;
    auto* decay = app.add_subcommand("decay", "Fit the sup-norm decay exponent of a linear or nonlinear run");
    decay->add_option("--family", dec.family, "gaussian or band")->capture_default_str();
    decay->add_option("--k", dec.k, "Band centre; the band is [2k/3, 4k/3]")->capture_default_str();
    decay->add_option("--horizon", dec.horizon, "Final time (>= 100)")->capture_default_str();
    decay->add_flag("--linear-only,!--nonlinear", dec.linear_only, "Linear flow (default) or full nonlinear run")
        ->default_str("true");
    decay->add_option("--n", dec.n, "Grid points")->capture_default_str();
    decay->add_option("--half-length", dec.half_length, "Half period L")->capture_default_str();
    decay->add_option("--amplitude", dec.amplitude)->capture_default_str();
    decay->add_option("--width", dec.width, "Gaussian width")->capture_default_str();
    decay->add_option("--cadence", dec.cadence, "Sampling interval")->capture_default_str();
    decay->add_option("--t-min", dec.t_min, "Fit window start")->capture_default_str();
    decay->add_option("--t-max", dec.t_max, "Fit window end (default: horizon)");
    decay->add_option("--replay", dec.replay, "Fit a stored two-column (t, value) file instead of running");
    add_out(decay);

    SymbolOptions sym;
    auto* symbols_cmd = app.add_subcommand("symbols", "Tabulate S-infinity estimates against the dyadic block bound");
    symbols_cmd->add_option("--range", sym.range, "Block index range LO HI")->expected(2)->capture_default_str();
    symbols_cmd->add_option("--block", sym.block, "Single block j1 j2 j3 (j1 >= j2 >= j3)")->expected(3);
    symbols_cmd->add_option("--mu", sym.mu, "Symbol order (1 or 2)")->capture_default_str();
    symbols_cmd->add_option("--resolution", sym.resolution, "Samples per axis")->capture_default_str();
    symbols_cmd->add_option("--seed", sym.seed, "Seed for the fixed mu = 2 arguments")->capture_default_str();
    symbols_cmd->add_flag("--dump", sym.dump, "Write sampled symbol values per block");
    symbols_cmd->add_option("--dump-stride", sym.dump_stride)->capture_default_str();
    add_out(symbols_cmd);

    double window_start = -1.0;
    auto* scatter = app.add_subcommand("scatter", "Run and extract profile and corrected phases at tracked frequencies");
    add_config_flags(scatter);
    add_out(scatter);
    scatter->add_option("--window-start", window_start, "Start of the phase-variation window (default T/3)");

    std::vector<std::string> only;
    double k0_perturbation = 0.0;
    auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
    ver->add_option("--only", only, "Run only the named criterion (repeatable)")->allow_extra_args(false);
    ver->add_option("--inject-k0-perturbation", k0_perturbation, "Test hook: perturb K0 by relative amount REL")
        ->group("Test hooks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        set_thread_count(threads > 0 ? threads : env_threads());
        if (*sim) return cmd_simulate(common, out);
        if (*decay) return cmd_decay(common, dec, out);
        if (*symbols_cmd) return cmd_symbols(common, sym, out);
        if (*scatter) return cmd_scatter(common, window_start, out);
        if (*ver) return cmd_verify(only, k0_perturbation, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const BlowUpError& e) {
        err << "blow-up: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::domain_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::range_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const AccuracyError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const ResolutionError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_failure;
}

}  // namespace qgsw::cli
