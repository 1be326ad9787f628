#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qgsw/diagnostics.hpp"
#include "qgsw/solver.hpp"

namespace qgsw::config {

inline constexpr int schema_version = 1;

struct DiagnosticsSelection {
    double hs_index = 2.0;
    std::vector<double> tracked_xi;
    symbols::ThetaNormalization theta = symbols::ThetaNormalization::as_stated;
    bool energy_monitor = true;
    bool write_checkpoints = true;
};

struct ExperimentConfig {
    RunConfig run;
    DiagnosticsSelection diagnostics;
    std::string output_dir;  // empty: run-stamped directory under the output root
    std::uint64_t seed = 1;  // feeds randomized initial-data families
};

// Document layout (all keys optional except schema_version):
// {
//   "schema_version": 1,
//   "seed": 1,
//   "grid":        {"N", "L"},
//   "initial":     {"family", "amplitude", "width", "center", "k_low", "k_high",
//                   "modes": [{"k", "amplitude", "phase"}], "path"},
//   "solver":      {"T", "dt", "adaptive", "tolerance", "dt_min", "dt_max",
//                   "nonlinearity", "mu_max", "dealias", "frame", "jump",
//                   "blowup_factor", "tail_threshold"},
//   "quadrature":  {"inner_radius", "inner_panel_nodes", "inner_s_max", "z_max",
//                   "outer_panel_nodes", "outer_panel_width", "far_start",
//                   "far_panel_width", "verify", "tolerance"},
//   "diagnostics": {"cadence", "hs_index", "tracked_xi", "theta_normalization",
//                   "energy_monitor", "write_checkpoints"},
//   "output":      {"dir"}
// }
// Unknown keys raise ConfigError naming the dotted field.
ExperimentConfig from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& cfg);

// Parse text; syntax errors report line and column.
nlohmann::json parse_document(const std::string& text, const std::string& origin);
nlohmann::json load_document(const std::string& path);

// Applies "a.b.c=value"; value is parsed as JSON when possible, else taken as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

// Resolve file (or defaults when path is empty) plus overrides.
ExperimentConfig load(const std::string& path, const std::vector<std::string>& overrides);

// FNV-1a over the canonical dump of the fully resolved document, 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace qgsw::config
