#pragma once

#include <numbers>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgsw/initial_data.hpp"
#include "qgsw/quadrature.hpp"
#include "qgsw/spectral.hpp"
#include "qgsw/state.hpp"

namespace qgsw {

enum class Nonlinearity { none, direct, series };
std::string to_string(Nonlinearity n);
Nonlinearity nonlinearity_from_string(const std::string& s);

struct StepControl {
    double dt = 0.1;
    bool adaptive = false;
    double tolerance = 1e-9;
    double dt_min = 1e-8;
    double dt_max = 10.0;
};

struct RunConfig {
    Grid grid;
    InitialData initial;
    double t_final = 10.0;
    StepControl step;
    Nonlinearity nonlinearity = Nonlinearity::direct;
    int mu_max = 1;
    double dealias = 2.0 / 3.0;
    double cadence = 1.0;
    Frame frame = Frame::moving;
    double jump = 1.0 / std::numbers::pi;
    QuadratureSpec quad;
    double blowup_factor = 10.0;
    double tail_threshold = 1e-3;
    bool keep_states = true;

    void validate() const;
};

struct StepInfo {
    double t = 0.0;
    double dt = 0.0;
    int rhs_evals = 0;
    double error_estimate = 0.0;
};

struct Trajectory {
    std::vector<FrontState> states;
    std::vector<StepInfo> steps;
};

// Thrown when the run leaves the trusted regime; carries the last state that
// passed the checks.
struct BlowUpError : std::runtime_error {
    BlowUpError(const std::string& msg, FrontState last) : std::runtime_error(msg), last_state(std::move(last)) {}
    FrontState last_state;
};

FrontState initial_state(const RunConfig& config);

// i omega(xi) with phi_hat_t = i omega phi_hat for the linear part:
// omega = p(xi) in the moving frame, 2 pi xi + p(xi) in the lab frame.
double linear_frequency(double xi, Frame frame);

// Nonlinear term d_x N(phi) in spectral form, de-aliased, zero mode removed.
SpectralField nonlinear_term(const SpectralField& phi_hat, const RunConfig& config);

// Exact linear propagation by dt.
SpectralField propagate_linear(const SpectralField& phi_hat, double dt, Frame frame);

// One integrating-factor RK4 step (negative dt allowed).
FrontState step(const FrontState& state, double dt, const RunConfig& config);

// Same step plus an embedded third-order error estimate (L2 norm of the
// difference); returns the fourth-order state.
FrontState step_embedded(const FrontState& state, double dt, const RunConfig& config, double& error, int& rhs_evals);

using CheckpointObserver = std::function<void(const FrontState&)>;

// Integrate to t_final, checkpointing every `cadence` time units (and at t = 0).
Trajectory run(const RunConfig& config, const CheckpointObserver& observer = {});
Trajectory run_from(const FrontState& start, const RunConfig& config, const CheckpointObserver& observer = {});

// Roots of p'(xi) = -x/t: +-sqrt((t/x)^{2/3} - 1) for 0 < x/t <= 1.
std::vector<double> stationary_phase_points(double x_over_t);

// max|phi_hat| over the top fifth of the retained band divided by max|phi_hat|.
double spectral_tail_fraction(const SpectralField& f, double dealias);

}  // namespace qgsw
