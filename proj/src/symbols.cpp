#include "qgsw/symbols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>

#include "qgsw/error.hpp"
#include "qgsw/specfun.hpp"
#include "qgsw/spectral.hpp"

namespace qgsw::symbols {

namespace {

constexpr double pi = std::numbers::pi;

void check_arity(int mu, size_t n) {
    if (mu < 1 || mu > specfun::default_mu_max)
        throw UnsupportedOrderError("symbol order must be in 1.." + std::to_string(specfun::default_mu_max));
    if (n != size_t(2 * mu + 1))
        throw DomainError("symbol of order " + std::to_string(mu) + " takes " + std::to_string(2 * mu + 1) +
                          " frequencies");
}

}  // namespace

double t_symbol(int mu, std::span<const double> etas, const SymbolQuadrature& quad) {
    check_arity(mu, etas.size());
    double emax = 0.0;
    for (double e : etas) emax = std::max(emax, std::abs(e));
    if (emax == 0.0) return 0.0;

    // Panels no wider than pi / (4 max|eta|) resolve the oscillation; below
    // that radius the substitution z = a e^{-s} handles the log terms.
    const double h = std::min(1.0, pi / (4.0 * emax));
    const GaussRule& g = gauss_legendre(quad.panel_nodes);

    cplx acc_pos = 0.0, acc_neg = 0.0;
    auto add = [&](double z, double w) {
        cplx pp = 1.0, pm = 1.0;
        for (double e : etas) {
            const cplx ph = std::polar(1.0, e * z);
            pp *= 1.0 - ph;
            pm *= 1.0 - std::conj(ph);
        }
        // The near (B) and far (A) coefficients glued by psi recombine into
        // the single expansion coefficient C_mu.
        const double c = specfun::taylor_coeff(mu, z);
        acc_pos += w * c * pp;
        acc_neg += w * c * pm;
    };

    for (double s0 = 0.0, w = 1.0; s0 < quad.inner_s_max;) {
        const double s1 = std::min(s0 + w, quad.inner_s_max);
        for (int i = 0; i < quad.panel_nodes; ++i) {
            const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * g.nodes[i];
            const double z = h * std::exp(-s);
            add(z, 0.5 * (s1 - s0) * g.weights[i] * z);
        }
        s0 = s1;
        if (s0 >= 4.0) w *= 1.5;
    }
    const int panels = int(std::ceil((quad.z_max - h) / h));
    const double hw = (quad.z_max - h) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = h + p * hw;
        for (int i = 0; i < quad.panel_nodes; ++i)
            add(a + 0.5 * hw * (1.0 + g.nodes[i]), 0.5 * hw * g.weights[i]);
    }
    const cplx total = 2.0 * (acc_pos + acc_neg);
    const double scale = std::max(1.0, std::abs(total));
    if (std::abs(total.imag()) > 1e-10 * scale) throw AccuracyError("t_symbol: imaginary residue above 1e-10");
    return total.real();
}

double t_symbol_closed(int mu, std::span<const double> etas) {
    check_arity(mu, etas.size());
    const int n = int(etas.size());
    double s = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        double sigma = 0.0;
        for (int j = 0; j < n; ++j)
            if (mask & (1u << j)) sigma += etas[j];
        const double sign = (std::popcount(mask) & 1) ? -1.0 : 1.0;
        s += sign * std::pow(1.0 + sigma * sigma, mu - 0.5);
    }
    double fact = 1.0;
    for (int k = 2; k <= 2 * mu; ++k) fact *= k;
    return 2.0 * pi / fact * s;
}

PhasePoint phase_phi(double eta1, double eta2, double xi) {
    const double eta3 = xi - eta1 - eta2;
    PhasePoint r{eta1, eta2, xi, 0.0, 0.0, 0.0, 0.0};
    r.phi = dispersion(eta1) + dispersion(eta2) + dispersion(eta3) - dispersion(xi);
    const double d3 = dispersion(eta3, 1);
    r.d_eta1 = dispersion(eta1, 1) - d3;
    r.d_eta2 = dispersion(eta2, 1) - d3;
    r.d_xi = d3 - dispersion(xi, 1);
    return r;
}

double frak_a(double xi) {
    const double q = 1.0 + xi * xi;
    return 3.0 * xi / (q * q * std::sqrt(q));
}

double phi_expansion_error(double xi, double zeta1, double zeta2) {
    if (std::abs(zeta1) > 0.5 || std::abs(zeta2) > 0.5)
        throw DomainError("phi_expansion_error: |zeta| must be at most 0.5");
    // p(xi+z1) + p(xi+z2) - p(xi+z1+z2) - p(xi) = -p''(xi) z1 z2 + O(z^3)
    return phase_phi(xi + zeta1, xi + zeta2, xi).phi + frak_a(xi) * zeta1 * zeta2;
}

SymbolSample sample_block(std::span<const int> blocks, int resolution, const SymbolFn& m, std::string name,
                          bool with_cutoffs) {
    const int n = int(blocks.size());
    if (n < 1 || n > 3) throw DomainError("sample_block supports 1 to 3 axes");
    if (resolution < 8) throw ResolutionError("sample_block: resolution below 8 points per axis");
    SymbolSample s;
    s.blocks.assign(blocks.begin(), blocks.end());
    s.shape.assign(n, resolution);
    s.name = std::move(name);
    for (int a = 0; a < n; ++a) {
        // Period 3.5 * 2^j > 2 * (8/5) 2^j keeps the annulus away from the box edge.
        const double period = 3.5 * std::ldexp(1.0, blocks[a]);
        s.origin.push_back(-0.5 * period);
        s.step.push_back(period / resolution);
    }
    size_t total = 1;
    for (int a = 0; a < n; ++a) total *= size_t(resolution);
    s.values.assign(total, 0.0);

    // Cutoff factor per axis, computed once.
    std::vector<std::vector<double>> cut(n, std::vector<double>(resolution));
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < resolution; ++i)
            cut[a][i] = with_cutoffs ? dyadic_cutoff(blocks[a], s.coord(a, i)) : 1.0;

    std::vector<int> idx(n, 0);
    std::vector<double> eta(n);
    for (size_t k = 0; k < total; ++k) {
        size_t rem = k;
        double c = 1.0;
        for (int a = n - 1; a >= 0; --a) {
            idx[a] = int(rem % resolution);
            rem /= resolution;
            eta[a] = s.coord(a, idx[a]);
            c *= cut[a][idx[a]];
        }
        if (c != 0.0) s.values[k] = c * m(eta);
    }
    return s;
}

double s_infinity_estimate(const SymbolSample& sample) {
    const int n = int(sample.dims());
    if (n < 1) throw DomainError("s_infinity_estimate: empty sample");
    const int min_res = n >= 3 ? 64 : 32;
    for (int r : sample.shape)
        if (r < min_res)
            throw ResolutionError("s_infinity_estimate: need at least " + std::to_string(min_res) +
                                  " points per axis, got " + std::to_string(r));
    for (const auto& v : sample.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("s_infinity_estimate: non-finite symbol value");
    std::vector<cplx> out(sample.values.size());
    fft_plan(sample.shape).backward(sample.values.data(), out.data());
    // |F^{-1}m(x_l)| = prod(step) |IDFT_l| on x-spacing 2 pi / (n step); the steps cancel.
    double sum = 0.0;
    for (const auto& v : out) sum += std::abs(v);
    double scale = 1.0;
    for (int r : sample.shape) scale *= 2.0 * pi / r;
    return sum * scale;
}

double t1_block_bound(int j1, int j2, int j3) {
    const double a = std::ldexp(1.0, j1), b = std::ldexp(1.0, j2), c = std::ldexp(1.0, j3);
    return a * b * c / (1.0 + a) * (1.0 + b * b) * (1.0 + b) * (1.0 + c);
}

double resonant_t1_sum(double xi) {
    static std::shared_mutex mu;
    static std::map<double, double> cache;
    {
        std::shared_lock lock(mu);
        auto it = cache.find(xi);
        if (it != cache.end()) return it->second;
    }
    const double a[3] = {xi, xi, -xi}, b[3] = {xi, -xi, xi}, c[3] = {-xi, xi, xi};
    const double v = t_symbol(1, a) + t_symbol(1, b) + t_symbol(1, c);
    std::unique_lock lock(mu);
    cache.emplace(xi, v);
    return v;
}

double theta_coefficient(double xi, ThetaNormalization norm) {
    if (xi == 0.0) return 0.0;
    const double s = resonant_t1_sum(xi);
    const double a = frak_a(xi);
    switch (norm) {
        case ThetaNormalization::as_stated: return -pi * xi / (3.0 * a) * s;
        case ThetaNormalization::stationary_phase: return -2.0 * pi * xi / (3.0 * std::abs(a)) * s;
    }
    return 0.0;
}

double theta_phase(std::span<const double> times, std::span<const double> h_abs2, double xi, double t,
                   ThetaNormalization norm) {
    if (times.size() != h_abs2.size()) throw ShapeError("theta_phase: history arrays differ in length");
    if (t == 0.0) return 0.0;
    if (times.empty() || std::abs(times.front()) > 1e-12) throw DomainError("theta_phase: history must start at t = 0");
    if (times.back() < t - 1e-12) throw DomainError("theta_phase: history does not cover [0, t]");
    if (xi == 0.0) return 0.0;
    double integral = 0.0;
    for (size_t k = 0; k + 1 < times.size() && times[k] < t; ++k) {
        const double a = times[k];
        double b = times[k + 1];
        if (!(b > a)) throw DomainError("theta_phase: times must be strictly increasing");
        const double slope = (h_abs2[k + 1] - h_abs2[k]) / (b - a);
        b = std::min(b, t);
        // f(tau) = alpha + slope (tau + 1) on [a, b]
        const double alpha = h_abs2[k] - slope * (a + 1.0);
        integral += alpha * std::log((b + 1.0) / (a + 1.0)) + slope * (b - a);
    }
    return theta_coefficient(xi, norm) * integral;
}

void write_symbol_dump(const std::string& path, const SymbolSample& s, int stride) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out.precision(17);
    const int n = int(s.dims());
    out << "# symbol " << s.name << "\n# blocks";
    for (int j : s.blocks) out << ' ' << j;
    out << "\n#";
    for (int a = 0; a < n; ++a) out << " j" << a + 1;
    for (int a = 0; a < n; ++a) out << " eta" << a + 1;
    out << " re im\n";
    stride = std::max(1, stride);
    for (size_t k = 0; k < s.values.size(); ++k) {
        size_t rem = k;
        std::vector<int> idx(n);
        bool keep = true;
        for (int a = n - 1; a >= 0; --a) {
            idx[a] = int(rem % s.shape[a]);
            rem /= s.shape[a];
            if (idx[a] % stride) keep = false;
        }
        if (!keep) continue;
        for (int j : s.blocks) out << j << ' ';
        for (int a = 0; a < n; ++a) out << s.coord(a, idx[a]) << ' ';
        out << s.values[k].real() << ' ' << s.values[k].imag() << '\n';
    }
}

}  // namespace qgsw::symbols
