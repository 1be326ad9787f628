#include "qgsw/io.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qgsw/error.hpp"

namespace qgsw::io {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.precision(17);
    return out;
}

}  // namespace

void write_checkpoint(const std::string& path, const FrontState& s, const std::string& config_hash) {
    s.validate();
    auto out = open_out(path);
    out << "# qgsw checkpoint\n";
    out << "# t = " << s.time << '\n';
    out << "# N = " << s.grid.n << '\n';
    out << "# L = " << s.grid.half_length << '\n';
    out << "# frame = " << to_string(s.frame) << '\n';
    out << "# jump = " << s.jump << '\n';
    out << "# config_hash = " << config_hash << '\n';
    out << "# x phi\n";
    for (int j = 0; j < s.grid.n; ++j) out << s.grid.x(j) << ' ' << s.values[j] << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

FrontState read_checkpoint(const std::string& path, std::string* config_hash) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint " + path);
    std::map<std::string, std::string> header;
    FrontState s;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find(" = ");
            if (eq != std::string::npos) header[line.substr(2, eq - 2)] = line.substr(eq + 3);
            continue;
        }
        std::istringstream row(line);
        double x, v;
        if (!(row >> x >> v)) throw ShapeError("malformed checkpoint row in " + path + ": " + line);
        s.values.push_back(v);
    }
    for (const char* k : {"t", "N", "L", "frame"})
        if (!header.count(k)) throw ShapeError(std::string("checkpoint ") + path + " lacks header field " + k);
    s.time = std::stod(header["t"]);
    s.grid.n = std::stoi(header["N"]);
    s.grid.half_length = std::stod(header["L"]);
    s.frame = frame_from_string(header["frame"]);
    if (header.count("jump")) s.jump = std::stod(header["jump"]);
    if (config_hash) *config_hash = header.count("config_hash") ? header["config_hash"] : "";
    s.validate();
    return s;
}

void write_series(const std::string& path, const std::string& xlabel, const std::string& ylabel,
                  const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ShapeError("write_series: length mismatch");
    auto out = open_out(path);
    out << "# " << xlabel << ' ' << ylabel << '\n';
    for (size_t i = 0; i < x.size(); ++i) out << x[i] << ' ' << y[i] << '\n';
}

void write_gnuplot_script(const std::string& path, const std::string& title, const std::vector<std::string>& files,
                          bool logscale) {
    auto out = open_out(path);
    out << "set title '" << title << "'\n";
    if (logscale) out << "set logscale xy\n";
    out << "plot ";
    for (size_t i = 0; i < files.size(); ++i) {
        if (i) out << ", \\\n     ";
        out << "'" << fs::path(files[i]).filename().string() << "' using 1:2 with lines title '"
            << fs::path(files[i]).stem().string() << "'";
    }
    out << "\npause -1\n";
}

std::string make_run_dir(const std::string& root, const std::string& command) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
    fs::create_directories(root);
    const fs::path base = fs::path(root) / (command + "-" + stamp);
    for (int k = 0;; ++k) {
        const fs::path p = k == 0 ? base : fs::path(base.string() + "-" + std::to_string(k));
        if (fs::create_directory(p)) return p.string();
    }
}

std::string default_output_root() {
    const char* env = std::getenv("QGSW_OUTPUT_ROOT");
    return env && *env ? env : "runs";
}

}  // namespace qgsw::io
