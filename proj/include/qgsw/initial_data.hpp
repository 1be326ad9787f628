#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgsw/state.hpp"

namespace qgsw {

struct ModeSpec {
    double k = 1.0;
    double amplitude = 1.0;
    double phase = 0.0;
};

// Named initial-data family.
//   gaussian: amplitude * exp(-((x - center)/width)^2)
//   band:     smooth flat-top even spectrum supported in k_low <= |xi| <= k_high,
//             scaled so that max|phi| = amplitude
//   modes:    sum amplitude_m cos(k_m x + phase_m), k snapped to the grid
//   noise:    random phases under a Gaussian envelope of width k_high,
//             scaled so that max|phi| = amplitude (seeded)
//   zero
//   file:     checkpoint file at `path` (grid must match)
struct InitialData {
    std::string family = "gaussian";
    double amplitude = 0.01;
    double width = 1.0;
    double center = 0.0;
    double k_low = 1.0;
    double k_high = 2.0;
    std::vector<ModeSpec> modes;
    std::string path;
    std::uint64_t seed = 1;

    void validate() const;
};

const std::vector<std::string>& initial_families();

// Grid values of the initial profile. For the file family the stored time is
// returned through `time` when non-null.
std::vector<double> initial_values(const Grid& grid, const InitialData& data, double* time = nullptr);

}  // namespace qgsw
