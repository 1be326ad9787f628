#include "qgsw/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "qgsw/diagnostics.hpp"
#include "qgsw/kernel.hpp"
#include "qgsw/solver.hpp"
#include "qgsw/specfun.hpp"
#include "qgsw/symbols.hpp"

namespace qgsw::verify {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// K0 and K0' against their integral representations
//   K0(x) = int_0^inf e^{-x cosh t} dt,  K0'(x) = -int_0^inf cosh t e^{-x cosh t} dt.
void special_functions(CriterionResult& r) {
    boost::math::quadrature::exp_sinh<double> q;
    double worst0 = 0.0, worst1 = 0.0, at0 = 0.0, at1 = 0.0;
    constexpr int samples = 60;
    for (int i = 0; i < samples; ++i) {
        const double x = 1e-4 * std::pow(30.0 / 1e-4, double(i) / (samples - 1));
        // Cut the integrands where they underflow so cosh overflow cannot produce inf * 0.
        auto f0 = [x](double t) {
            const double a = x * std::cosh(t);
            return a > 700.0 ? 0.0 : std::exp(-a);
        };
        auto f1 = [x](double t) {
            const double a = x * std::cosh(t);
            return a > 700.0 ? 0.0 : std::cosh(t) * std::exp(-a);
        };
        const double o0 = q.integrate(f0, 1e-15);
        const double o1 = -q.integrate(f1, 1e-15);
        const double e0 = std::abs(specfun::k0(x) - o0) / std::abs(o0);
        const double e1 = std::abs(specfun::k0_derivative(1, x) - o1) / std::abs(o1);
        if (e0 > worst0) worst0 = e0, at0 = x;
        if (e1 > worst1) worst1 = e1, at1 = x;
    }
    r.passed = worst0 <= 1e-10 && worst1 <= 1e-10;
    r.detail = fmt("max rel err K0 %.2e (x=%.3g), K0' %.2e (x=%.3g), tol 1e-10", worst0, at0, worst1, at1);
}

// 2 int_R K0 = 2 pi with the kernel's own half-line rule.
void kernel_constant(CriterionResult& r) {
    double s = 0.0;
    for (const auto& nd : QuadratureSpec{}.half_line_nodes()) s += nd.weight * 2.0 * specfun::k0(nd.zeta);
    const double c = 2.0 * s;
    const double err = std::abs(c - 2.0 * pi);
    r.passed = err <= 1e-8;
    r.detail = fmt("2 int K0 = %.15f, |c - 2pi| = %.2e, tol 1e-8", c, err);
}

void steady_state(CriterionResult& r) {
    FrontState s;
    s.values.assign(s.grid.n, 0.0);
    const std::vector<std::array<double, 2>> pts{{0.0, 0.5}, {0.0, 1.0}, {0.0, 3.0}};
    const auto u = kernel::velocity_field(s, pts);
    double worst = 0.0;
    std::string vals;
    for (size_t i = 0; i < pts.size(); ++i) {
        const double ref = kernel::steady_velocity(pts[i][1], s.jump);
        const double e = std::max(std::abs(u[i][0] - ref), std::abs(u[i][1])) / std::abs(ref);
        worst = std::max(worst, e);
        vals += fmt(" y=%g:%.10f", pts[i][1], u[i][0]);
    }
    r.passed = worst <= 1e-6;
    r.detail = fmt("u_x%s; max rel err %.2e, tol 1e-6", vals.c_str(), worst);
}

// Frequency of a small single mode in the lab frame from the solver's own
// trajectory, against 2 pi xi - xi (1 + xi^2)^{-1/2}.
void linear_dispersion(CriterionResult& r) {
    double worst = 0.0;
    std::string vals;
    for (double k : {0.5, 1.0, 4.0}) {
        RunConfig c;
        c.frame = Frame::lab;
        c.initial.family = "modes";
        c.initial.modes = {{k, 1e-4, 0.0}};
        c.step.dt = 0.05;
        c.cadence = 0.05;
        c.t_final = 1.0;
        const Trajectory tr = run(c);
        const int m = diagnostics::grid_index(c.grid, k);
        double phase = 0.0;
        cplx prev = transform(tr.states.front()).coeffs[m];
        for (size_t i = 1; i < tr.states.size(); ++i) {
            const cplx cur = transform(tr.states[i]).coeffs[m];
            phase += std::arg(cur / prev);
            prev = cur;
        }
        const double omega = phase / (tr.states.back().time - tr.states.front().time);
        const double ref = 2.0 * pi * k - k / std::sqrt(1.0 + k * k);
        const double e = std::abs(omega - ref) / std::abs(ref);
        worst = std::max(worst, e);
        vals += fmt(" k=%g:%.9f/%.9f", k, omega, ref);
    }
    r.passed = worst <= 1e-4;
    r.detail = fmt("omega measured/symbol%s; max rel err %.2e, tol 1e-4", vals.c_str(), worst);
}

// Cubic term assembled in Fourier space from T_1 on a three-mode profile
// versus the direct kernel quadrature; the mismatch is quintic in eps.
void cubic_consistency(CriterionResult& r) {
    const Grid g;
    struct Mode {
        double k, a, ph;
    };
    const Mode modes[3] = {{0.5, 1.0, 0.0}, {1.0, 0.7, 0.3}, {1.5, 0.4, 1.0}};
    std::vector<double> eta;
    std::vector<cplx> amp;
    for (const auto& m : modes) {
        eta.push_back(m.k);
        amp.push_back(0.5 * m.a * std::polar(1.0, m.ph));
        eta.push_back(-m.k);
        amp.push_back(0.5 * m.a * std::polar(1.0, -m.ph));
    }
    const int n = int(eta.size());
    std::vector<double> t1(n * n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int d = 0; d < n; ++d) {
                const double e[3] = {eta[a], eta[b], eta[d]};
                t1[(a * n + b) * n + d] = symbols::t_symbol(1, e);
            }
    const double jump = 1.0 / pi;
    // With phi = sum c_a e^{i eta_a x}, the cubic part of the nonlinear
    // velocity is (i pi [q] / 3) sum sigma T_1(eta_a, eta_b, eta_c) c_a c_b c_c e^{i sigma x}.
    std::vector<double> cubic_unit(g.n);
    for (int j = 0; j < g.n; ++j) {
        cplx acc = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int d = 0; d < n; ++d) {
                    const double sg = eta[a] + eta[b] + eta[d];
                    acc += cplx(0.0, sg) * t1[(a * n + b) * n + d] * amp[a] * amp[b] * amp[d] *
                           std::polar(1.0, sg * g.x(j));
                }
        cubic_unit[j] = (pi * jump / 3.0 * acc).real();
    }
    std::vector<double> eps{1e-2, 5e-3, 2.5e-3}, err;
    for (double e : eps) {
        FrontState s;
        s.grid = g;
        s.jump = jump;
        s.values.resize(g.n);
        for (int j = 0; j < g.n; ++j) {
            double v = 0.0;
            for (const auto& m : modes) v += m.a * std::cos(m.k * g.x(j) + m.ph);
            s.values[j] = e * v;
        }
        const auto direct = kernel::rhs_nonlinear(s);
        double d = 0.0;
        for (int j = 0; j < g.n; ++j) d = std::max(d, std::abs(direct[j] - e * e * e * cubic_unit[j]));
        err.push_back(d);
    }
    // Least-squares slope of log err against log eps.
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < eps.size(); ++i) {
        mx += std::log(eps[i]) / 3.0;
        my += std::log(err[i]) / 3.0;
    }
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < eps.size(); ++i) {
        sxx += std::pow(std::log(eps[i]) - mx, 2);
        sxy += (std::log(eps[i]) - mx) * (std::log(err[i]) - my);
    }
    const double slope = sxy / sxx;
    r.passed = std::abs(slope - 5.0) <= 0.3;
    r.detail = fmt("mismatch %.3e %.3e %.3e at eps 1e-2,5e-3,2.5e-3; slope %.3f, want 5.0 +- 0.3", err[0], err[1],
                   err[2], slope);
}

void conservation(CriterionResult& r) {
    RunConfig c;
    c.grid.n = 1024;
    c.grid.half_length = 100.0;
    c.initial.amplitude = 1e-2;
    c.t_final = 50.0;
    c.step.dt = 0.5;
    c.cadence = 5.0;
    const Trajectory tr = run(c);
    const auto a = diagnostics::make_record(tr.states.front());
    double l2 = 0.0, zero = 0.0;
    for (const auto& s : tr.states) {
        const auto b = diagnostics::make_record(s);
        l2 = std::max(l2, std::abs(b.l2 - a.l2) / a.l2);
        zero = std::max(zero, std::abs(b.zero_mode - a.zero_mode));
    }
    r.passed = l2 < 1e-6 && zero < 1e-12;
    r.detail = fmt("max relative L2 drift %.2e (tol 1e-6), zero-mode drift %.2e (tol 1e-12)", l2, zero);
}

void dispersive_decay(CriterionResult& r) {
    auto exponent = [](const std::string& family, double& half) {
        RunConfig c;
        c.grid.n = 8192;
        c.grid.half_length = 1024.0;
        c.initial.family = family;
        c.initial.amplitude = 1.0;
        c.initial.width = 1.0;
        c.initial.k_low = 1.0;
        c.initial.k_high = 2.0;
        c.nonlinearity = Nonlinearity::none;
        c.t_final = 500.0;
        c.cadence = 5.0;
        c.keep_states = false;
        std::vector<double> t, v;
        run(c, [&](const FrontState& s) {
            t.push_back(s.time);
            v.push_back(sup_norm(transform(s)));
        });
        const auto fit = diagnostics::decay_fit(t, v, 50.0, 500.0);
        half = fit.half_width;
        return fit.exponent;
    };
    double hg = 0.0, hb = 0.0;
    const double g = exponent("gaussian", hg);
    const double b = exponent("band", hb);
    const bool pg = std::abs(g + 1.0 / 3.0) <= 0.05, pb = std::abs(b + 0.5) <= 0.05;
    r.passed = pg && pb;
    r.detail = fmt("gaussian %.4f +- %.4f (want -1/3 +- 0.05) %s; band [1,2] %.4f +- %.4f (want -1/2 +- 0.05) %s", g,
                   hg, pg ? "ok" : "MISS", b, hb, pb ? "ok" : "MISS");
}

void resonance_geometry(CriterionResult& r) {
    double at_res = 0.0;
    for (double xi : {-2.5, -1.0, -0.5, 0.3, 1.0, 2.0, 3.0}) {
        const auto p = symbols::phase_phi(xi, xi, xi);
        at_res = std::max({at_res, std::abs(p.phi), std::abs(p.d_eta1), std::abs(p.d_eta2)});
    }
    auto ratio = [](double xi, double z1, double z2) {
        const double den = std::pow(std::abs(z1), 3) + std::pow(std::abs(z2), 3);
        return den > 0.0 ? std::abs(symbols::phi_expansion_error(xi, z1, z2)) / den : 0.0;
    };
    // Fit C once on a deterministic grid, then test a seeded random sample.
    double c_fit = 0.0;
    for (int a = 0; a <= 24; ++a)
        for (int i = 0; i <= 20; ++i)
            for (int j = 0; j <= 20; ++j)
                c_fit = std::max(c_fit, ratio(0.25 * (a - 12), 0.05 * (i - 10), 0.05 * (j - 10)));
    const double c = 1.1 * c_fit;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), uz(-0.5, 0.5);
    double worst = 0.0;
    int violations = 0;
    for (int k = 0; k < 1000; ++k) {
        const double q = ratio(ux(rng), uz(rng), uz(rng));
        worst = std::max(worst, q);
        if (q > c) ++violations;
    }
    r.passed = at_res <= 1e-12 && violations == 0;
    r.detail = fmt("|Phi|,|grad Phi| at resonance <= %.1e (tol 1e-12); C = %.4f, max ratio on 1000 points %.4f, "
                   "%d violations",
                   at_res, c, worst, violations);
}

void oscillatory_integral(CriterionResult& r) {
    const double xi = 1.0, rho = 1.0, a = std::abs(symbols::frak_a(xi));
    const double bs[3] = {16.0, 64.0, 256.0};
    double dev[3];
    for (int i = 0; i < 3; ++i) dev[i] = diagnostics::resonance_integral_check(xi, bs[i] * bs[i] / a, rho);
    const double c = dev[0] * std::sqrt(bs[0]);
    const bool monotone = dev[1] <= 1.1 * dev[0] && dev[2] <= 1.1 * dev[1];
    const bool rate = dev[1] <= 1.1 * c / std::sqrt(bs[1]) && dev[2] <= 1.1 * c / std::sqrt(bs[2]);
    // Deviation is O(B^-4) here, so the last value already sits on the limit.
    const double limit = diagnostics::resonance_integral(bs[2]);
    const bool lim = std::abs(limit - 2.0 * pi) <= 1e-3;
    r.passed = monotone && rate && lim;
    r.detail = fmt("|I - 2pi| = %.3e, %.3e, %.3e at B = 16, 64, 256; C B^-1/2 envelope %s, monotone %s, limit %.10f",
                   dev[0], dev[1], dev[2], rate ? "ok" : "VIOLATED", monotone ? "yes" : "no", limit);
}

void symbol_bounds(CriterionResult& r) {
    double lo = 1e300, hi = 0.0;
    int jlo[3] = {}, jhi[3] = {}, count = 0;
    const symbols::SymbolFn t1 = [](std::span<const double> e) { return cplx(symbols::t_symbol_closed(1, e)); };
    for (int j1 = -4; j1 <= 4; ++j1)
        for (int j2 = -4; j2 <= j1; ++j2)
            for (int j3 = -4; j3 <= j2; ++j3) {
                const int b[3] = {j1, j2, j3};
                const auto sample = symbols::sample_block(b, 64, t1, "T1");
                const double q = symbols::s_infinity_estimate(sample) / symbols::t1_block_bound(j1, j2, j3);
                if (!std::isfinite(q)) throw std::runtime_error("non-finite ratio");
                ++count;
                if (q < lo) lo = q, jlo[0] = j1, jlo[1] = j2, jlo[2] = j3;
                if (q > hi) hi = q, jhi[0] = j1, jhi[1] = j2, jhi[2] = j3;
            }
    r.passed = hi / lo < 50.0;
    r.detail = fmt("%d blocks; ratio min %.3e at (%d,%d,%d), max %.3e at (%d,%d,%d); max/min %.3e, want < 50", count, lo,
                   jlo[0], jlo[1], jlo[2], hi, jhi[0], jhi[1], jhi[2], hi / lo);
}

void modified_scattering(CriterionResult& r) {
    RunConfig c;
    c.grid.n = 2048;
    c.grid.half_length = 160.0 * pi;
    c.initial.amplitude = 0.15;
    c.initial.width = 2.0;
    c.t_final = 300.0;
    c.step.dt = 0.5;
    c.cadence = 0.5;
    const Trajectory tr = run(c);
    bool ok = true;
    std::string vals;
    for (double xi : {0.5, 1.0}) {
        const auto s = diagnostics::scattering_extract(tr.states, xi);
        const double th = diagnostics::phase_total_variation(s.times, s.h, 100.0, 300.0);
        const double tv = diagnostics::phase_total_variation(s.times, s.v, 100.0, 300.0);
        ok = ok && tv < th && s.warning.empty();
        vals += fmt(" xi=%g: TV arg h %.3e, TV arg v %.3e;", xi, th, tv);
    }
    const double w0 = diagnostics::weighted_profile_norm(tr.states.front());
    double wmax = 0.0, wmin = 1e300;
    for (const auto& s : tr.states) {
        const double w = diagnostics::weighted_profile_norm(s) / std::pow(s.time + 1.0, 0.01) / w0;
        wmax = std::max(wmax, w);
        wmin = std::min(wmin, w);
    }
    const bool bounded = wmax <= 5.0 && wmin >= 0.2;
    r.passed = ok && bounded;
    r.detail = fmt("late window [100,300]:%s |d_xi h|/(t+1)^0.01 relative to t=0 in [%.3f, %.3f] (want within 5x)",
                   vals.c_str(), wmin, wmax);
}

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "special_functions", 5.0, special_functions},
        {2, "kernel_constant", 1.0, kernel_constant},
        {3, "steady_state", 10.0, steady_state},
        {4, "linear_dispersion", 30.0, linear_dispersion},
        {5, "cubic_consistency", 120.0, cubic_consistency},
        {6, "conservation", 300.0, conservation},
        {7, "dispersive_decay", 300.0, dispersive_decay},
        {8, "resonance_geometry", 30.0, resonance_geometry},
        {9, "oscillatory_integral", 60.0, oscillatory_integral},
        {10, "symbol_bounds", 600.0, symbol_bounds},
        {11, "modified_scattering", 600.0, modified_scattering},
    };
    return list;
}

CriterionResult run_one(const Criterion& c) {
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.budget_seconds = c.budget_seconds;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        c.check(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.budget_seconds) {
        r.passed = false;
        r.detail += fmt(" [over runtime budget %.0fs]", r.budget_seconds);
    }
    return r;
}

std::vector<CriterionResult> run(const std::vector<std::string>& only, std::ostream& out) {
    const auto& all = criteria();
    for (const auto& name : only)
        if (std::none_of(all.begin(), all.end(), [&](const Criterion& c) { return c.name == name; }))
            throw std::invalid_argument("unknown criterion '" + name + "'");
    std::vector<CriterionResult> results;
    for (const auto& c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
        results.push_back(run_one(c));
        out << format_line(results.back()) << std::endl;
    }
    return results;
}

std::string format_line(const CriterionResult& r) {
    return fmt("[%s] %2d %-20s %7.2fs  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds) + r.detail;
}

}  // namespace qgsw::verify
