#include "qgsw/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qgsw/error.hpp"
#include "qgsw/io.hpp"
#include "qgsw/spectral.hpp"

namespace qgsw {

namespace {

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

// Flat-top window on [0, 1]: C-infinity ramps over the outer quarters, 1 in between.
double plateau(double s) { return smooth_step(4.0 * s) * smooth_step(4.0 * (1.0 - s)); }

std::vector<double> scaled_to_peak(const SpectralField& f, double amplitude) {
    std::vector<double> v = inverse(f);
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    if (peak == 0.0) throw ConfigError("initial", "spectrum has no resolved modes on this grid");
    for (double& x : v) x *= amplitude / peak;
    return v;
}

}  // namespace

const std::vector<std::string>& initial_families() {
    static const std::vector<std::string> f{"gaussian", "band", "modes", "noise", "zero", "file"};
    return f;
}

void InitialData::validate() const {
    const auto& fam = initial_families();
    if (std::find(fam.begin(), fam.end(), family) == fam.end())
        throw ConfigError("initial.family", "unknown family '" + family + "'");
    if (!std::isfinite(amplitude)) throw ConfigError("initial.amplitude", "must be finite");
    if (family == "gaussian" && !(width > 0.0)) throw ConfigError("initial.width", "must be positive");
    if ((family == "band") && !(k_low >= 0.0 && k_high > k_low))
        throw ConfigError("initial.k_high", "band requires 0 <= k_low < k_high");
    if (family == "noise" && !(k_high > 0.0)) throw ConfigError("initial.k_high", "must be positive");
    if (family == "modes" && modes.empty()) throw ConfigError("initial.modes", "at least one mode required");
    if (family == "file" && path.empty()) throw ConfigError("initial.path", "file family requires a path");
}

std::vector<double> initial_values(const Grid& grid, const InitialData& d, double* time) {
    grid.validate();
    d.validate();
    if (time) *time = 0.0;
    const int n = grid.n;
    std::vector<double> v(n, 0.0);

    if (d.family == "gaussian") {
        for (int j = 0; j < n; ++j) {
            const double s = (grid.x(j) - d.center) / d.width;
            v[j] = d.amplitude * std::exp(-s * s);
        }
    } else if (d.family == "modes") {
        for (const auto& m : d.modes) {
            const double k = grid.dxi() * std::round(m.k / grid.dxi());
            for (int j = 0; j < n; ++j) v[j] += m.amplitude * std::cos(k * grid.x(j) + m.phase);
        }
    } else if (d.family == "band") {
        if (d.amplitude == 0.0) return v;
        SpectralField f{grid, std::vector<cplx>(n, 0.0)};
        for (int m = 0; m < n; ++m) {
            if (m == n / 2) continue;
            f.coeffs[m] = plateau((std::abs(grid.xi(m)) - d.k_low) / (d.k_high - d.k_low));
        }
        v = scaled_to_peak(f, d.amplitude);
    } else if (d.family == "noise") {
        if (d.amplitude == 0.0) return v;
        std::mt19937_64 rng(d.seed);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        SpectralField f{grid, std::vector<cplx>(n, 0.0)};
        for (int m = 1; m < n / 2; ++m) {
            const double xi = grid.xi(m) / d.k_high;
            f.coeffs[m] = std::polar(std::exp(-0.5 * xi * xi), angle(rng));
            f.coeffs[n - m] = std::conj(f.coeffs[m]);
        }
        v = scaled_to_peak(f, d.amplitude);
    } else if (d.family == "file") {
        FrontState s = io::read_checkpoint(d.path);
        if (!(s.grid == grid))
            throw ConfigError("initial.path", "checkpoint grid (N = " + std::to_string(s.grid.n) +
                                                  ") does not match the configured grid");
        if (time) *time = s.time;
        v = std::move(s.values);
    }
    return v;
}

}  // namespace qgsw
