#pragma once

#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "qgsw/fft.hpp"
#include "qgsw/solver.hpp"
#include "qgsw/spectral.hpp"
#include "qgsw/state.hpp"
#include "qgsw/symbols.hpp"

namespace qgsw::diagnostics {

struct TrackedValue {
    double xi = 0.0;
    double theta = 0.0;
    cplx h = 0.0;
    cplx v = 0.0;
};

struct DiagnosticsRecord {
    double time = 0.0;
    double l2 = 0.0;         // |phi|_{L2}
    double hs = 0.0;         // Sobolev norm of index RecordSpec::hs_index
    double z = 0.0;          // Z norm, r = 0.4, w = 11
    double b16 = 0.0;        // B^{1,6}
    double sup = 0.0;        // max|phi| on the padded grid
    double dxi_h = 0.0;      // |d_xi h_hat|_{L2_xi}
    double zero_mode = 0.0;  // Re phi_hat(0)
    double tail = 0.0;       // spectral tail fraction
    std::vector<TrackedValue> tracked;
};

struct RecordSpec {
    double hs_index = 2.0;
    double dealias = 2.0 / 3.0;
    int sup_pad = 4;
};

// Per-checkpoint quantities; depends on the state alone.
DiagnosticsRecord make_record(const FrontState& state, const RecordSpec& spec = {});

// Moving-frame Fourier transform of a state of either frame.
SpectralField moving_transform(const FrontState& state);

struct DecayFit {
    double exponent = 0.0;
    double half_width = 0.0;  // 95% confidence half-width of the slope
    double intercept = 0.0;   // log prefactor
    int samples = 0;
};

// Least-squares slope of log(value) against log(t) over t in [t_min, t_max].
DecayFit decay_fit(const std::vector<double>& times, const std::vector<double>& values, double t_min, double t_max);

// |d_xi h_hat(t, .)|_{L2_xi}, computed as (2 pi)^{-1/2} |x h|_{L2} with h the
// inverse transform of the profile.
double weighted_profile_norm(const FrontState& state);

struct ScatteringSeries {
    double xi = 0.0;
    std::vector<double> times;
    std::vector<double> theta;
    std::vector<cplx> h;
    std::vector<cplx> v;
    std::string warning;  // non-empty when the cadence is too coarse
};

// Profile value h_hat(t, xi) at a grid frequency.
cplx profile_at(const FrontState& state, double xi);

// Index of xi on the grid; throws if xi is not a grid frequency (to 1e-6 spacing).
int grid_index(const Grid& grid, double xi);

// Theta from the |h_hat|^2 history at each checkpoint, v = e^{i Theta} h.
ScatteringSeries scattering_extract(const std::vector<FrontState>& states, double xi_star,
                                    symbols::ThetaNormalization norm = symbols::ThetaNormalization::as_stated);

// Total variation of the unwrapped argument of z over samples with t in [t_min, t_max].
double phase_total_variation(const std::vector<double>& times, const std::vector<cplx>& z, double t_min,
                             double t_max);

// int int e^{-i x1 x2} w(x1/B) w(x2/B) dx1 dx2 with w(x) = e^{-x^2}, by
// reduction to int w(u/B^2) W(u) du with W the numerical transform of w.
double resonance_integral(double frak_b);

// |resonance_integral(B) - 2 pi| with B = sqrt(|A(xi)| t) rho; B < 4 is out of regime.
double resonance_integral_check(double xi, double t, double rho);

// Ratio |d/dt |phi|_{H^s}^2| / (|phi|_{H^s}^2 |phi|_{B^{2,6}} sum_mu |phi|_{B^{1,2}}^{2mu-1})
// between consecutive checkpoints (midpoint norms).
struct EnergyMonitor {
    double hs_index = 2.0;
    int mu_max = 1;
    std::vector<double> times, ratios;

    void add(const FrontState& state);
    double max_ratio() const;
    double median_ratio() const;
    // max ratio <= factor * median ratio
    bool within(double factor = 3.0) const;

private:
    bool have_prev_ = false;
    double prev_t_ = 0.0, prev_e_ = 0.0, prev_den_ = 0.0;
};

// CSV (fixed column order) plus JSON-lines stream with schema version.
class RecordWriter {
public:
    static constexpr int schema_version = 1;
    RecordWriter(const std::string& csv_path, const std::string& jsonl_path, const std::vector<double>& tracked_xi);
    void write(const DiagnosticsRecord& r);
    static std::string csv_header(size_t tracked);

private:
    std::ofstream csv_, jsonl_;
    size_t tracked_;
};

// Streams records for a run: fills tracked Theta from the accumulated history.
class RecordStream {
public:
    RecordStream(RecordSpec spec, std::vector<double> tracked_xi,
                 symbols::ThetaNormalization norm = symbols::ThetaNormalization::as_stated);
    DiagnosticsRecord add(const FrontState& state);
    const std::vector<DiagnosticsRecord>& records() const { return records_; }

private:
    RecordSpec spec_;
    std::vector<double> xi_;
    symbols::ThetaNormalization norm_;
    std::vector<double> times_;
    std::vector<std::vector<double>> abs2_;
    std::vector<DiagnosticsRecord> records_;
};

}  // namespace qgsw::diagnostics
