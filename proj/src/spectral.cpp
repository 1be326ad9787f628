#include "qgsw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgsw/error.hpp"

namespace qgsw {

namespace {

constexpr double pi = std::numbers::pi;

double parity(int m) { return (m & 1) ? -1.0 : 1.0; }

double smooth_step_g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

SpectralField transform_complex(const Grid& grid, std::span<const cplx> values) {
    grid.validate();
    if (int(values.size()) != grid.n)
        throw ShapeError("transform: expected " + std::to_string(grid.n) + " samples, got " +
                         std::to_string(values.size()));
    SpectralField f{grid, std::vector<cplx>(grid.n)};
    fft_plan(grid.n).forward(values.data(), f.coeffs.data());
    const double scale = grid.dx() / (2.0 * pi);
    for (int m = 0; m < grid.n; ++m) f.coeffs[m] *= scale * parity(m);
    return f;
}

SpectralField transform(const Grid& grid, std::span<const double> values) {
    if (int(values.size()) != grid.n)
        throw ShapeError("transform: expected " + std::to_string(grid.n) + " samples, got " +
                         std::to_string(values.size()));
    std::vector<cplx> c(values.begin(), values.end());
    return transform_complex(grid, c);
}

SpectralField transform(const FrontState& state) { return transform(state.grid, state.values); }

std::vector<cplx> inverse_complex(const SpectralField& f) {
    const int n = f.grid.n;
    if (int(f.coeffs.size()) != n) throw ShapeError("inverse: coefficient count does not match grid");
    std::vector<cplx> tmp(n), out(n);
    const double scale = f.grid.dxi();
    for (int m = 0; m < n; ++m) tmp[m] = f.coeffs[m] * (scale * parity(m));
    fft_plan(n).backward(tmp.data(), out.data());
    return out;
}

std::vector<double> inverse(const SpectralField& f) {
    const auto c = inverse_complex(f);
    std::vector<double> out(c.size());
    for (size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

double psi_base(double xi) {
    const double a = std::abs(xi);
    constexpr double lo = 1.25, hi = 1.6;
    if (a <= lo) return 1.0;
    if (a >= hi) return 0.0;
    const double t = (a - lo) / (hi - lo);
    const double g0 = smooth_step_g(1.0 - t), g1 = smooth_step_g(t);
    return g0 / (g0 + g1);
}

double low_cutoff(int k, double xi) { return psi_base(std::ldexp(xi, -k)); }

double dyadic_cutoff(int k, double xi) { return psi_base(std::ldexp(xi, -k)) - psi_base(std::ldexp(xi, 1 - k)); }

DyadicRange dyadic_range(const Grid& grid) {
    const double lo_xi = grid.dxi(), hi_xi = grid.xi_max();
    int lo = int(std::floor(std::log2(lo_xi / 1.6))) - 1;
    while (1.6 * std::ldexp(1.0, lo) <= lo_xi) ++lo;
    int hi = int(std::ceil(std::log2(hi_xi / 0.625))) + 1;
    while (0.625 * std::ldexp(1.0, hi) >= hi_xi) --hi;
    return {lo, hi};
}

SpectralField project(int k, const SpectralField& f) {
    SpectralField g = f;
    apply_multiplier(g, [k](double xi) { return dyadic_cutoff(k, xi); });
    return g;
}

SpectralField project_low(int k, const SpectralField& f) {
    SpectralField g = f;
    apply_multiplier(g, [k](double xi) { return low_cutoff(k, xi); });
    return g;
}

void NormSpec::validate() const {
    switch (kind) {
        case Kind::sobolev:
            if (!std::isfinite(a)) throw DomainError("sobolev index must be finite");
            break;
        case Kind::z:
            if (!(a > 0.0) || !(b > 0.0)) throw DomainError("Z-norm weights must be positive");
            break;
        case Kind::bab:
            if (!(a < b)) throw DomainError("B^{a,b} norm requires a < b");
            break;
    }
}

double sup_norm(const SpectralField& f, int pad) {
    const int n = f.grid.n;
    const int np = n * pad;
    std::vector<cplx> buf(np, 0.0), out(np);
    const double scale = f.grid.dxi();
    for (int m = 0; m < n; ++m) {
        const int s = f.grid.signed_index(m);
        const cplx c = f.coeffs[m] * (scale * parity(s));
        if (s == -n / 2 && pad > 1) {
            buf[np - n / 2] += 0.5 * c;
            buf[n / 2] += 0.5 * c;
        } else {
            buf[(s + np) % np] += c;
        }
    }
    fft_plan(np).backward(buf.data(), out.data());
    double mx = 0.0;
    for (const auto& v : out) mx = std::max(mx, std::abs(v));
    return mx;
}

double l2_norm(const Grid& grid, std::span<const double> values) {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s * grid.dx());
}

double norm(const SpectralField& f, const NormSpec& spec) {
    spec.validate();
    const int n = f.grid.n;
    switch (spec.kind) {
        case NormSpec::Kind::sobolev: {
            double s = 0.0;
            for (int m = 0; m < n; ++m) {
                const double xi = f.xi(m);
                s += std::pow(1.0 + xi * xi, spec.a) * std::norm(f.coeffs[m]);
            }
            return std::sqrt(s * f.grid.dxi());
        }
        case NormSpec::Kind::z: {
            double mx = 0.0;
            for (int m = 0; m < n; ++m) {
                const double a = std::abs(f.xi(m));
                mx = std::max(mx, (std::pow(a, spec.a) + std::pow(a, spec.b)) * std::abs(f.coeffs[m]));
            }
            return mx;
        }
        case NormSpec::Kind::bab: {
            const auto r = dyadic_range(f.grid);
            double s = 0.0;
            for (int j = r.lo; j <= r.hi; ++j) {
                const double w = std::pow(2.0, spec.a * j) + std::pow(2.0, spec.b * j);
                s += w * sup_norm(project(j, f));
            }
            return s;
        }
    }
    return 0.0;
}

double dispersion(double xi, int order) {
    const double q = 1.0 + xi * xi;
    switch (order) {
        case 0: return -xi / std::sqrt(q);
        case 1: return -1.0 / (q * std::sqrt(q));
        case 2: return 3.0 * xi / (q * q * std::sqrt(q));
        case 3: return 3.0 * (1.0 - 4.0 * xi * xi) / (q * q * q * std::sqrt(q));
        default: throw UnsupportedOrderError("dispersion: order must be in 0..3");
    }
}

SpectralField to_profile(const SpectralField& phi_hat, double t) {
    SpectralField h = phi_hat;
    if (t != 0.0) apply_multiplier(h, [t](double xi) { return std::polar(1.0, -t * dispersion(xi)); });
    return h;
}

SpectralField to_profile(const FrontState& state) {
    if (state.frame != Frame::moving) throw DomainError("profile is defined in the moving frame");
    return to_profile(transform(state), state.time);
}

SpectralField from_profile(const SpectralField& h_hat, double t) { return to_profile(h_hat, -t); }

std::vector<double> derivative(const Grid& grid, std::span<const double> values) {
    SpectralField f = transform(grid, values);
    apply_multiplier(f, [](double xi) { return cplx(0.0, xi); }, true);
    return inverse(f);
}

}  // namespace qgsw
