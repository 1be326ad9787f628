#include "qgsw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgsw/error.hpp"
#include "qgsw/kernel.hpp"

namespace qgsw {

namespace {

constexpr double pi = std::numbers::pi;

using Coeffs = std::vector<cplx>;

// Physical L2 norm of a coefficient vector (Plancherel: |f|^2 = 2 pi int |fhat|^2).
double l2_of_coeffs(const Grid& g, const Coeffs& c) {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return std::sqrt(2.0 * pi * s * g.dxi());
}

struct Propagator {
    Coeffs half, full;
};

Propagator make_propagator(const Grid& g, double h, Frame frame) {
    Propagator p{Coeffs(g.n), Coeffs(g.n)};
    for (int m = 0; m < g.n; ++m) {
        const double w = linear_frequency(g.xi(m), frame);
        p.half[m] = std::polar(1.0, 0.5 * h * w);
        p.full[m] = std::polar(1.0, h * w);
    }
    return p;
}

Coeffs nl(const Coeffs& c, const Grid& g, const RunConfig& cfg, int& evals) {
    ++evals;
    return nonlinear_term(SpectralField{g, c}, cfg).coeffs;
}

struct StageResult {
    Coeffs next;
    Coeffs last_stage;  // G at the fourth stage, for the embedded estimate
};

// Integrating-factor RK4: classical RK4 applied to w(s) = e^{-i omega s} phi_hat(t0 + s).
StageResult if_rk4(const Coeffs& u, const Coeffs& a, double h, const Grid& g, const RunConfig& cfg, int& evals) {
    const int n = g.n;
    const Propagator e = make_propagator(g, h, cfg.frame);
    Coeffs s(n);
    for (int m = 0; m < n; ++m) s[m] = e.half[m] * (u[m] + 0.5 * h * a[m]);
    const Coeffs b = nl(s, g, cfg, evals);
    for (int m = 0; m < n; ++m) s[m] = e.half[m] * u[m] + 0.5 * h * b[m];
    const Coeffs c = nl(s, g, cfg, evals);
    for (int m = 0; m < n; ++m) s[m] = e.full[m] * u[m] + h * e.half[m] * c[m];
    Coeffs d = nl(s, g, cfg, evals);
    Coeffs out(n);
    for (int m = 0; m < n; ++m)
        out[m] = e.full[m] * u[m] + h / 6.0 * (e.full[m] * a[m] + 2.0 * e.half[m] * (b[m] + c[m]) + d[m]);
    return {std::move(out), std::move(d)};
}

void check_finite(const Coeffs& c, const FrontState& last) {
    for (const auto& v : c)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw BlowUpError("non-finite values at t = " + std::to_string(last.time), last);
}

FrontState to_state(const Coeffs& c, const FrontState& like, double t) {
    FrontState s = like;
    s.values = inverse(SpectralField{like.grid, c});
    s.time = t;
    return s;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::string to_string(Nonlinearity n) {
    switch (n) {
        case Nonlinearity::none: return "none";
        case Nonlinearity::direct: return "direct";
        case Nonlinearity::series: return "series";
    }
    return "?";
}

Nonlinearity nonlinearity_from_string(const std::string& s) {
    if (s == "none") return Nonlinearity::none;
    if (s == "direct") return Nonlinearity::direct;
    if (s == "series") return Nonlinearity::series;
    throw ConfigError("solver.nonlinearity", "expected none, direct or series, got '" + s + "'");
}

void RunConfig::validate() const {
    try {
        grid.validate();
    } catch (const std::exception& e) {
        throw ConfigError("grid", e.what());
    }
    initial.validate();
    if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("solver.T", "must be positive");
    if (!(step.dt > 0.0) || !std::isfinite(step.dt)) throw ConfigError("solver.dt", "must be positive");
    if (step.adaptive && !(step.tolerance > 0.0)) throw ConfigError("solver.tolerance", "must be positive");
    if (step.adaptive && !(step.dt_min > 0.0 && step.dt_max >= step.dt_min))
        throw ConfigError("solver.dt_min", "need 0 < dt_min <= dt_max");
    if (!(dealias > 0.5 && dealias <= 1.0)) throw ConfigError("solver.dealias", "must lie in (1/2, 1]");
    if (!(cadence > 0.0)) throw ConfigError("diagnostics.cadence", "must be positive");
    if (nonlinearity == Nonlinearity::series && (mu_max < 1 || mu_max > 3))
        throw ConfigError("solver.mu_max", "series order must be 1, 2 or 3");
    if (!std::isfinite(jump)) throw ConfigError("jump", "must be finite");
    if (!(blowup_factor > 1.0)) throw ConfigError("solver.blowup_factor", "must exceed 1");
    try {
        quad.validate();
    } catch (const std::exception& e) {
        throw ConfigError("quadrature", e.what());
    }
}

double linear_frequency(double xi, Frame frame) {
    const double p = dispersion(xi, 0);
    return frame == Frame::lab ? DispersionSpec::frame_shift * xi + p : p;
}

SpectralField nonlinear_term(const SpectralField& phi_hat, const RunConfig& cfg) {
    const Grid& g = phi_hat.grid;
    SpectralField out{g, Coeffs(g.n, 0.0)};
    if (cfg.nonlinearity == Nonlinearity::none) return out;
    // The nonlinearity is translation invariant, so the moving-frame
    // evaluation serves both frames.
    FrontState s;
    s.grid = g;
    s.values = inverse(phi_hat);
    s.frame = Frame::moving;
    s.jump = cfg.jump;
    const std::vector<double> r = cfg.nonlinearity == Nonlinearity::direct
                                      ? kernel::rhs_nonlinear(s, cfg.quad)
                                      : kernel::rhs_series(s, cfg.mu_max, cfg.quad);
    out = transform(g, r);
    const double kc = cfg.dealias * g.n / 2;
    for (int m = 0; m < g.n; ++m)
        if (std::abs(g.signed_index(m)) > kc) out.coeffs[m] = 0.0;
    out.coeffs[0] = 0.0;
    out.coeffs[g.n / 2] = 0.0;
    return out;
}

SpectralField propagate_linear(const SpectralField& f, double dt, Frame frame) {
    SpectralField g = f;
    apply_multiplier(g, [&](double xi) { return std::polar(1.0, dt * linear_frequency(xi, frame)); });
    return g;
}

FrontState step_embedded(const FrontState& state, double dt, const RunConfig& cfg, double& error, int& evals) {
    state.validate();
    if (!(state.grid == cfg.grid)) throw ShapeError("step: state grid differs from the configured grid");
    if (state.frame != cfg.frame) throw DomainError("step: state frame differs from the configured frame");
    const Grid& g = state.grid;
    evals = 0;
    const Coeffs u = transform(state).coeffs;
    const Coeffs a = nl(u, g, cfg, evals);
    StageResult r = if_rk4(u, a, dt, g, cfg, evals);
    check_finite(r.next, state);
    // FSAL-style third-order companion: y4 - y3 = dt/6 (k4 - k5).
    const Coeffs k5 = nl(r.next, g, cfg, evals);
    Coeffs diff(g.n);
    for (int m = 0; m < g.n; ++m) diff[m] = dt / 6.0 * (r.last_stage[m] - k5[m]);
    error = l2_of_coeffs(g, diff);
    return to_state(r.next, state, state.time + dt);
}

FrontState step(const FrontState& state, double dt, const RunConfig& cfg) {
    state.validate();
    if (!(state.grid == cfg.grid)) throw ShapeError("step: state grid differs from the configured grid");
    if (state.frame != cfg.frame) throw DomainError("step: state frame differs from the configured frame");
    int evals = 0;
    const Coeffs u = transform(state).coeffs;
    const Coeffs a = nl(u, state.grid, cfg, evals);
    StageResult r = if_rk4(u, a, dt, state.grid, cfg, evals);
    check_finite(r.next, state);
    return to_state(r.next, state, state.time + dt);
}

double spectral_tail_fraction(const SpectralField& f, double dealias) {
    const int n = f.grid.n;
    const double kc = dealias * n / 2;
    double peak = 0.0, tail = 0.0;
    for (int m = 0; m < n; ++m) {
        const double a = std::abs(f.coeffs[m]);
        const double k = std::abs(f.grid.signed_index(m));
        peak = std::max(peak, a);
        if (k >= 0.8 * kc && k <= kc) tail = std::max(tail, a);
    }
    return peak > 0.0 ? tail / peak : 0.0;
}

FrontState initial_state(const RunConfig& cfg) {
    cfg.validate();
    FrontState s;
    s.grid = cfg.grid;
    s.frame = cfg.frame;
    s.jump = cfg.jump;
    s.values = initial_values(cfg.grid, cfg.initial, &s.time);
    return s;
}

Trajectory run(const RunConfig& cfg, const CheckpointObserver& observer) {
    return run_from(initial_state(cfg), cfg, observer);
}

Trajectory run_from(const FrontState& start, const RunConfig& cfg, const CheckpointObserver& observer) {
    cfg.validate();
    start.validate();
    if (!(start.grid == cfg.grid)) throw ShapeError("run: start state grid differs from the configured grid");
    const double t0 = start.time;
    const double t_end = t0 + cfg.t_final;

    Trajectory traj;
    auto checkpoint = [&](const FrontState& s) {
        if (observer) observer(s);
        if (cfg.keep_states) traj.states.push_back(s);
    };

    const double peak0 = max_abs(start.values);
    const double tail0 = spectral_tail_fraction(transform(start), cfg.dealias);
    // Data that already fills the top of the band is judged against its own level.
    const double tail_limit = std::max(cfg.tail_threshold, 2.0 * tail0);
    const bool linear_only = cfg.nonlinearity == Nonlinearity::none;

    FrontState cur = start;
    checkpoint(cur);
    double dt = cfg.step.dt;
    long k_next = 1;
    while (cur.time < t_end) {
        const double target = std::min(t0 + double(k_next) * cfg.cadence, t_end);
        while (cur.time < target) {
            const double remaining = target - cur.time;
            double h = linear_only ? remaining : std::min(dt, remaining);
            FrontState next;
            StepInfo info;
            if (linear_only) {
                next = cur;
                next.values = inverse(propagate_linear(transform(cur), h, cfg.frame));
                next.time = cur.time + h;
            } else if (cfg.step.adaptive) {
                for (;;) {
                    double err = 0.0;
                    int ev = 0;
                    next = step_embedded(cur, h, cfg, err, ev);
                    info.rhs_evals += ev;
                    info.error_estimate = err;
                    const double fac = err > 0.0 ? 0.9 * std::pow(cfg.step.tolerance / err, 0.25) : 4.0;
                    const double h_new = std::clamp(h * std::clamp(fac, 0.2, 4.0), cfg.step.dt_min, cfg.step.dt_max);
                    if (err <= cfg.step.tolerance || h <= cfg.step.dt_min) {
                        dt = h_new;
                        break;
                    }
                    h = std::min(h_new, remaining);
                }
            } else {
                next = step(cur, h, cfg);
                info.rhs_evals = 4;
            }
            if (h >= remaining * (1.0 - 1e-12)) next.time = target;
            info.t = next.time;
            info.dt = h;
            traj.steps.push_back(info);

            for (double v : next.values)
                if (!std::isfinite(v)) throw BlowUpError("non-finite values at t = " + std::to_string(next.time), cur);
            if (peak0 > 0.0 && max_abs(next.values) > cfg.blowup_factor * peak0)
                throw BlowUpError("max|phi| exceeded " + std::to_string(cfg.blowup_factor) + "x its initial value at t = " +
                                      std::to_string(next.time),
                                  cur);
            if (cfg.tail_threshold > 0.0 && !linear_only &&
                spectral_tail_fraction(transform(next), cfg.dealias) > tail_limit)
                throw BlowUpError("spectral tail above threshold at t = " + std::to_string(next.time), cur);
            cur = std::move(next);
        }
        checkpoint(cur);
        ++k_next;
    }
    return traj;
}

std::vector<double> stationary_phase_points(double r) {
    if (!(r > 0.0) || r > 1.0) return {};
    if (r == 1.0) return {0.0};
    const double x = std::sqrt(std::pow(1.0 / r, 2.0 / 3.0) - 1.0);
    return {-x, x};
}

}  // namespace qgsw
