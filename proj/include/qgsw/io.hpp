#pragma once

#include <string>
#include <vector>

#include "qgsw/state.hpp"

namespace qgsw::io {

// Text checkpoint: '#'-prefixed key = value header (t, N, L, frame, jump,
// config_hash) followed by "x phi" rows at 17 significant digits.
void write_checkpoint(const std::string& path, const FrontState& state, const std::string& config_hash);
FrontState read_checkpoint(const std::string& path, std::string* config_hash = nullptr);

// Two-column plot-ready series.
void write_series(const std::string& path, const std::string& xlabel, const std::string& ylabel,
                  const std::vector<double>& x, const std::vector<double>& y);

// gnuplot script plotting each two-column file against its first column.
void write_gnuplot_script(const std::string& path, const std::string& title, const std::vector<std::string>& files,
                          bool logscale);

// Creates <root>/<command>-<UTC stamp>[-k], never reusing an existing directory.
std::string make_run_dir(const std::string& root, const std::string& command);

// Output root: $QGSW_OUTPUT_ROOT or "runs".
std::string default_output_root();

}  // namespace qgsw::io
